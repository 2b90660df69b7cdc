import numpy as np

from .errors import TooFewPoints


def loglog_fit(x, y) -> tuple[float, float]:
    """OLS slope of log(y) on log(x) and the coefficient of determination."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        raise TooFewPoints("all x values coincide")
    slope = float(dx @ dy) / sxx
    resid = dy - slope * dx
    ss_res = float(resid @ resid)
    ss_tot = float(dy @ dy)
    # an exact fit of a flat line counts as perfect
    r2 = 1.0 if ss_tot == 0 or ss_res <= 1e-24 * max(ss_tot, 1.0) else 1.0 - ss_res / ss_tot
    return slope, r2
