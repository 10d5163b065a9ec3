#pragma once

#include <stdexcept>
#include <string>

namespace qrl {

// Base type for all library errors so callers can catch qrl failures
// separately from generic std exceptions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QRL_DEFINE_ERROR(Name)                       \
    struct Name : Error {                            \
        using Error::Error;                          \
        Name() : Error(#Name) {}                     \
    }

QRL_DEFINE_ERROR(AlternationViolation);
QRL_DEFINE_ERROR(EmptyWindow);
QRL_DEFINE_ERROR(SpaceMismatch);
QRL_DEFINE_ERROR(BadHyperparameter);
QRL_DEFINE_ERROR(UnrealizableHistory);
QRL_DEFINE_ERROR(DisconnectedGraph);
QRL_DEFINE_ERROR(LabelInconsistentWithBFS);
QRL_DEFINE_ERROR(LengthMismatch);
QRL_DEFINE_ERROR(BadDistribution);
QRL_DEFINE_ERROR(NotOracularizable);
QRL_DEFINE_ERROR(DimensionCap);
QRL_DEFINE_ERROR(NoWinnerExists);
QRL_DEFINE_ERROR(ZeroNorm);
QRL_DEFINE_ERROR(UnknownRegister);
QRL_DEFINE_ERROR(LayoutMismatch);
QRL_DEFINE_ERROR(ScenarioTooLarge);
QRL_DEFINE_ERROR(RetryBudgetExhausted);
QRL_DEFINE_ERROR(ExtensionNotSelfInverse);
QRL_DEFINE_ERROR(NotTrivialPercept);
QRL_DEFINE_ERROR(ConfigError);

#undef QRL_DEFINE_ERROR

}  // namespace qrl
