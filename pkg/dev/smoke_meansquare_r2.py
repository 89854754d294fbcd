"""Dev probe: r=2 mean-square runtimes and criterion 4/5 previews."""
import math
import sys
import time

sys.path.insert(0, "/root/pkg/src")

from barneszeta.meansquare import integrate_mean_square, verify_theorems
from barneszeta.params import BarnesParams, WeightStructure
from barneszeta.tilde import tilde_zeta

P2 = BarnesParams(a=1.0, w=(1.0, math.sqrt(2.0)))
IND = WeightStructure.independent()

# tilde values needed (independent path -> direct at 2*sigma)
t0 = time.time()
tv225 = tilde_zeta(P2, 2.25, IND, 1e-6)
print(f"tilde(2.25)={tv225.value:.10f} err={tv225.err_estimate:.2e} "
      f"({time.time()-t0:.2f}s)")
t0 = time.time()
tv175 = tilde_zeta(P2, 1.75, IND, 1e-6)
print(f"tilde(1.75)={tv175.value:.10f} err={tv175.err_estimate:.2e} "
      f"({time.time()-t0:.2f}s)")

# short integral to calibrate cost
t0 = time.time()
tr = integrate_mean_square(P2, 2.25, 60.0, quad_tol=1e-6,
                           checkpoint_grid=[30.0, 60.0])
dt = time.time() - t0
T, I, ev = tr.checkpoints[-1]
print(f"s=2.25 I(60)={I:.6f} I/T={I/60:.6f} tilde={tv225.value:.6f} "
      f"evals={ev} {dt:.1f}s")

# criterion 4 r=2 preview with workers
t0 = time.time()
rep = verify_theorems(P2, 2.25, [30.0, 60.0, 120.0, 240.0], IND,
                      quad_tol=1e-6, workers=4)
dt = time.time() - t0
print(f"crit4 r=2: regime={rep.regime.value} slope={rep.fitted_slope:+.3f} "
      f"pass={rep.passed} ({dt:.1f}s workers=4)")
print("  residuals:", [f"{t:g}:{r_:.3e}" for t, r_ in rep.residuals])
maxr = max(r_ for _, r_ in rep.residuals)
medr = sorted(r_ for _, r_ in rep.residuals)[len(rep.residuals) // 2]
print(f"  max/median = {maxr/medr:.2f} (criterion wants <= 2)")

# criterion 5 r=2 preview: sigma=1.75, I(300)/300 vs tilde within 15%
t0 = time.time()
tr5 = integrate_mean_square(P2, 1.75, 300.0, quad_tol=1e-6,
                            checkpoint_grid=[75.0, 150.0, 300.0], workers=4)
dt = time.time() - t0
T, I, ev = tr5.checkpoints[-1]
print(f"s=1.75 I(300)/300={I/300:.6f} tilde={tv175.value:.6f} "
      f"ratio={I/300/tv175.value:.4f} evals={ev} {dt:.1f}s workers=4")
