#pragma once

#include <stdexcept>
#include <string>

namespace vsst {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define VSST_DEFINE_ERROR(Name)                                    \
    struct Name : Error {                                          \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

// encoding
VSST_DEFINE_ERROR(EmptySet);
VSST_DEFINE_ERROR(EmptyString);
VSST_DEFINE_ERROR(TargetTooSmall);

// field_core
VSST_DEFINE_ERROR(MixedFields);
VSST_DEFINE_ERROR(DivisionByZero);
VSST_DEFINE_ERROR(ZeroElement);
VSST_DEFINE_ERROR(BadFactorization);

// numtheory
VSST_DEFINE_ERROR(NotMersenneExponent);
VSST_DEFINE_ERROR(CountExceedsAvailable);
VSST_DEFINE_ERROR(SearchBudgetExhausted);

// polynomials
VSST_DEFINE_ERROR(DuplicateAbscissa);
VSST_DEFINE_ERROR(BothZero);
VSST_DEFINE_ERROR(FieldTooLarge);
VSST_DEFINE_ERROR(DegreeTooLarge);

// shamir
VSST_DEFINE_ERROR(BadThreshold);
VSST_DEFINE_ERROR(FieldTooSmall);
VSST_DEFINE_ERROR(NotEnoughShares);
VSST_DEFINE_ERROR(DuplicateIndex);

// schemes
VSST_DEFINE_ERROR(BadParams);
VSST_DEFINE_ERROR(IndexOutOfRange);
VSST_DEFINE_ERROR(DuplicateShareValue);
VSST_DEFINE_ERROR(ShareOutOfField);
VSST_DEFINE_ERROR(MidHalfCollision);
VSST_DEFINE_ERROR(NotPrimitive);
VSST_DEFINE_ERROR(SelfVerification);

// coherence
VSST_DEFINE_ERROR(CoalitionTooSmall);
VSST_DEFINE_ERROR(SubsetBudgetExceeded);
VSST_DEFINE_ERROR(NoMajority);

// analysis
VSST_DEFINE_ERROR(TrivialGcd);

// documents / cli
VSST_DEFINE_ERROR(ParseError);

#undef VSST_DEFINE_ERROR

}  // namespace vsst
