#pragma once
#include <stdexcept>
#include <string>

namespace cmlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CMLAB_ERROR(Name)                                   \
    struct Name : Error {                                   \
        explicit Name(const std::string& what)              \
            : Error(std::string(#Name ": ") + what) {}      \
    }

CMLAB_ERROR(NotAUnit);
CMLAB_ERROR(LevelMismatch);
CMLAB_ERROR(Singular);
CMLAB_ERROR(TooLarge);
CMLAB_ERROR(NotASubgroup);
CMLAB_ERROR(NotDivisor);
CMLAB_ERROR(NotAbelian);
CMLAB_ERROR(InvalidOrder);
CMLAB_ERROR(NotInCartan);
CMLAB_ERROR(UsageError);

#undef CMLAB_ERROR

}  // namespace cmlab
