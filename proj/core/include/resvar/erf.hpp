#pragma once

namespace resvar {

/// Error function from W. J. Cody's rational Chebyshev approximations
/// (Math. Comp. 23, 1969). Pure double arithmetic, so results do not depend
/// on the platform libm beyond exp.
double erf(double x);

/// Complementary error function, accurate in the far tail.
double erfc(double x);

}  // namespace resvar
