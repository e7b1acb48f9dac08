#pragma once

// Single inclusion point for cpp-httplib so every translation unit sees the
// same configuration macros.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_REDIRECT_MAX_COUNT 5
#include <httplib.h>
