"""
Integrazione numerica adattiva (Simpson con estrapolazione di Richardson)
"""
import logging
from typing import Callable, Iterable, List, Optional

logger = logging.getLogger(__name__)


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 3.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     rel_tol: float = 1e-6, max_depth: int = 20,
                     min_depth: int = 4) -> float:
    """Integra f su [a, b] con Simpson adattivo.

    La tolleranza è relativa alla stima grossolana dell'integrale sull'intero
    intervallo; ogni metà riceve metà della tolleranza residua.

    Args:
        f: integranda scalare
        a: estremo inferiore
        b: estremo superiore
        rel_tol: tolleranza relativa
        max_depth: profondità massima di ricorsione
        min_depth: suddivisioni minime forzate (integrande con picchi stretti)

    Returns:
        Valore dell'integrale
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, rel_tol, max_depth, min_depth)

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(fa, fm, fb, 0.5 * (b - a))

    def _adaptive(lo: float, hi: float, flo: float, fmid: float, fhi: float,
                  s_whole: float, tol: float, depth: int) -> float:
        mid = 0.5 * (lo + hi)
        h = 0.5 * (hi - lo)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        s_left = _simpson(flo, flm, fmid, 0.5 * h)
        s_right = _simpson(fmid, frm, fhi, 0.5 * h)
        s_combined = s_left + s_right
        error_estimate = (s_combined - s_whole) / 15.0

        if depth >= max_depth:
            return s_combined + error_estimate
        if depth >= min_depth and abs(error_estimate) <= tol:
            return s_combined + error_estimate

        return (_adaptive(lo, mid, flo, flm, fmid, s_left, tol / 2.0, depth + 1)
                + _adaptive(mid, hi, fmid, frm, fhi, s_right, tol / 2.0, depth + 1))

    # Tolleranza assoluta derivata dalla stima iniziale; il pavimento evita
    # ricorsioni infinite su integrali nulli
    tol = max(abs(whole) * rel_tol, 1e-300)
    return _adaptive(a, b, fa, fm, fb, whole, tol, 0)


def integrate_piecewise(f: Callable[[float], float], breakpoints: Iterable[float],
                        rel_tol: float = 1e-6, max_depth: int = 20,
                        min_depth: int = 4) -> float:
    """Somma di adaptive_simpson sugli intervalli consecutivi di breakpoints"""
    points: List[float] = sorted(set(float(p) for p in breakpoints))
    total = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        total += adaptive_simpson(f, lo, hi, rel_tol, max_depth, min_depth)
    return total


def decade_breakpoints(lo: float, hi: float, first_step: float = 10.0,
                       extra: Optional[Iterable[float]] = None) -> List[float]:
    """Punti di suddivisione logaritmici lo, lo+10, lo+100, ... fino a hi.

    Usati per integrande che decadono su scale molto diverse (profili di
    turbolenza con scale di 100 m, 1.5 km e 10 km).
    """
    points = [lo]
    step = first_step
    while lo + step < hi:
        points.append(lo + step)
        step *= 10.0
    points.append(hi)
    if extra:
        points.extend(p for p in extra if lo < p < hi)
    return sorted(set(points))
