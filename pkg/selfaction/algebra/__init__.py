from .loglaurent import (
    LogLaurentPoly,
    LogLaurentError,
    add,
    mul,
    antiderivative,
    antiderivative_vanishing_at_1,
    derivative,
    evaluate,
    S,
    LOG_S,
    ONE,
)
