import math, time
import numpy as np
from barneszeta.params import BarnesParams
from barneszeta.evaluate import eval_direct, eval_approx
from barneszeta.errors import BudgetExceeded

p = BarnesParams(1.0, (1.0, math.sqrt(2.0)))
s = 2.2 + 5.0j

# high-x approx reference (truth proxy): err ~ K_true * x^-1.2
t0 = time.time()
ref_hi = eval_approx(p, s, x=20480.0, term_cap=10**9)
ref_hi2 = eval_approx(p, s, x=10240.0, term_cap=10**9)
print(f"approx ref x=20480: {ref_hi.value:.12g}  (t={time.time()-t0:.1f}s)")
print(f"approx ref x=10240: {ref_hi2.value:.12g}")
print(f"|ref(20480)-ref(10240)| = {abs(ref_hi.value-ref_hi2.value):.3e}")
print(f"|zeta_2(2.2+5i)| = {abs(ref_hi.value):.6f}")

# what rel_tol can eval_direct afford?
for rt in (0.9, 0.75, 0.5, 0.3, 0.2, 0.1):
    try:
        t0 = time.time()
        d = eval_direct(p, s, rt)
        print(f"eval_direct rel_tol={rt}: value={d.value:.10g} terms={d.terms_used:.3g} "
              f"bound={d.err_estimate:.3e} |d-ref|={abs(d.value-ref_hi.value):.3e} t={time.time()-t0:.1f}s")
    except BudgetExceeded as e:
        print(f"eval_direct rel_tol={rt}: BudgetExceeded ({str(e)[:70]})")

xs = [10.0, 20.0, 40.0, 80.0, 160.0]
vals = [eval_approx(p, s, x=x).value for x in xs]
errs_hi = [abs(v - ref_hi.value) for v in vals]
lx = np.log([float(x) for x in xs])
le = np.log(errs_hi)
slope_hi = np.polyfit(lx, le, 1)[0]
print("\nerrors vs approx(20480):", [f"{e:.3e}" for e in errs_hi])
print(f"slope vs high-x approx reference: {slope_hi:.3f}  (target -1.2 +/- 0.4)")
