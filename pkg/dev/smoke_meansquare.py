"""Dev smoke for meansquare: classical limits, determinism, regression."""
import math
import sys
import time

sys.path.insert(0, "/root/pkg/src")

from barneszeta.errors import InsufficientCheckpoints
from barneszeta.meansquare import (
    MeanSquareTrace,
    Regime,
    XPolicy,
    classify_regime,
    fit_residual_exponent,
    integrate_mean_square,
    report_to_json,
    trace_to_csv,
    verify_theorems,
)
from barneszeta.params import BarnesParams, WeightStructure

P1 = BarnesParams(a=1.0, w=(1.0,))
ZETA4 = math.pi**4 / 90.0
ZETA15 = 2.6123753486854883
ZETA25 = 1.3414872572509171

# 1. synthetic regression: I = c*T + 3*T^0.4 -> slope 0.4
c = 2.0
cps = tuple((T, c * T + 3.0 * T**0.4, 100) for T in (50.0, 100.0, 200.0, 400.0, 800.0))
tr = MeanSquareTrace(sigma=2.0, params=P1, checkpoints=cps, quad_tol=1e-6,
                     x_policy=XPolicy())
slope, intercept, r2 = fit_residual_exponent(tr, c)
print(f"synthetic slope {slope:.12f} intercept {intercept:.6f} r2 {r2:.12f}")
assert abs(slope - 0.4) < 1e-6 and abs(intercept - math.log(3.0)) < 1e-6

# zero residuals dropped -> InsufficientCheckpoints
cps0 = tuple((T, c * T, 100) for T in (50.0, 100.0, 200.0, 400.0))
tr0 = MeanSquareTrace(sigma=2.0, params=P1, checkpoints=cps0, quad_tol=1e-6,
                      x_policy=XPolicy())
try:
    fit_residual_exponent(tr0, c)
    raise AssertionError("expected InsufficientCheckpoints")
except InsufficientCheckpoints as e:
    print("zero-residual drop ->", e)

# 2. regime classification
assert classify_regime(1, 1.25)[0] is Regime.SIGMA_ABOVE_R
assert classify_regime(1, 0.8)[0] is Regime.UPPER_RANGE
assert classify_regime(1, 0.6)[0] is Regime.MID_RANGE
assert classify_regime(1, 0.3)[0] is Regime.LOWER_RANGE
reg, bound, notes = classify_regime(2, 1.75)
assert reg is Regime.MID_RANGE and bound == 0.5 and notes
print("boundary note:", notes[0][:70], "...")
assert classify_regime(2, 2.25)[0] is Regime.SIGMA_ABOVE_R

# 3. small integral vs classical value: sigma=2, r=1 -> mean |zeta(2+it)|^2 = zeta(4)
t0 = time.time()
tr2 = integrate_mean_square(P1, 2.0, 200.0, quad_tol=1e-6,
                            checkpoint_grid=[50.0, 100.0, 200.0])
dt = time.time() - t0
T, I, ev = tr2.checkpoints[-1]
print(f"I(200)={I:.10f} I/T={I/200:.10f} zeta(4)={ZETA4:.10f} "
      f"rel={(I/200)/ZETA4-1:+.3e} evals={ev} {dt:.1f}s")
assert abs(I / 200.0 / ZETA4 - 1.0) < 0.02

# monotone checkpoints
for (Ta, Ia, _), (Tb, Ib, _) in zip(tr2.checkpoints, tr2.checkpoints[1:]):
    assert Tb > Ta and Ib >= Ia

# 4. worker determinism (bitwise)
t0 = time.time()
tr2w = integrate_mean_square(P1, 2.0, 200.0, quad_tol=1e-6,
                             checkpoint_grid=[50.0, 100.0, 200.0], workers=3)
print(f"workers=3 identical: {tr2w.checkpoints == tr2.checkpoints} "
      f"({time.time()-t0:.1f}s)")
assert tr2w.checkpoints == tr2.checkpoints

# 5. quad_tol halving stability
tr2h = integrate_mean_square(P1, 2.0, 200.0, quad_tol=5e-7,
                             checkpoint_grid=[50.0, 100.0, 200.0])
dI = abs(tr2h.checkpoints[-1][1] - I)
print(f"quad_tol halved: dI={dI:.3e} (coarser tol says <= {1e-6*199:.3e})")
assert dI < 3.0 * 1e-6 * 199.0

# 6. csv / json round-trip shape
csv = trace_to_csv(tr2, config_lines=["cmd=smoke"])
print(csv.splitlines()[0], "|", csv.splitlines()[2])
assert csv.splitlines()[-1].startswith("200,")

# 7. criterion-4 style: r=1 sigma=1.25, residual vs zeta(2.5)*T should not grow
t0 = time.time()
rep = verify_theorems(P1, 1.25, [50.0, 100.0, 200.0, 400.0],
                      WeightStructure.rational(1, (1,)), quad_tol=1e-6)
dt = time.time() - t0
print(f"r=1 s=1.25: regime={rep.regime.value} slope={rep.fitted_slope:+.3f} "
      f"bound={rep.predicted_slope_bound} pass={rep.passed} "
      f"tilde={rep.tilde_value:.6f} ({dt:.1f}s)")
print("  residuals:", [f"{t:g}:{r_:.3e}" for t, r_ in rep.residuals])
maxr = max(r_ for _, r_ in rep.residuals)
medr = sorted(r_ for _, r_ in rep.residuals)[len(rep.residuals) // 2]
print(f"  max/median = {maxr/medr:.2f} (criterion wants <= 2)")
assert abs(rep.tilde_value - ZETA25) < 1e-9
print(report_to_json(rep).splitlines()[1:3])

# 8. sigma=0.75 short probe (criterion-5 scale model): T=500
t0 = time.time()
tr3 = integrate_mean_square(P1, 0.75, 500.0, quad_tol=1e-6,
                            checkpoint_grid=[125.0, 250.0, 500.0])
dt = time.time() - t0
T, I, ev = tr3.checkpoints[-1]
print(f"s=0.75 I(500)/500={I/500:.6f} zeta(1.5)={ZETA15:.6f} "
      f"ratio={I/500/ZETA15:.4f} evals={ev} {dt:.1f}s -> T=2000 ~{dt*16:.0f}s serial")
