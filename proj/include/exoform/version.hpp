#pragma once

#define EXOFORM_VERSION_MAJOR 0
#define EXOFORM_VERSION_MINOR 1
#define EXOFORM_VERSION_PATCH 0
#define EXOFORM_VERSION_STRING "0.1.0"

namespace exoform {
inline const char* version() { return EXOFORM_VERSION_STRING; }
}
