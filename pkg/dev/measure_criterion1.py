import math, time
from barneszeta.params import BarnesParams
from barneszeta.evaluate import eval_auto
from barneszeta.oracle import hurwitz_zeta

# criterion grid: sigma in {0.6,1.5,2,3}, t in {0,1,10,50}, a in {0.5,1,2}, w in {1,2,pi}
# Here: probe one (a,w) pair per (sigma,t) to gauge accuracy/cost scaling.
cases = []
for sigma in (0.6, 1.5, 2.0, 3.0):
    for t in (0.0, 1.0, 10.0, 50.0):
        cases.append((sigma, t, 1.0, 2.0))

print(f"{'sigma':>6} {'t':>5} {'rel_err':>10} {'method':>16} {'terms':>12} {'sec':>7}")
tot = 0.0
worst = {}
for sigma, t, a, w in cases:
    p = BarnesParams(a, (w,))
    s = complex(sigma, t)
    want = (w ** -s) * hurwitz_zeta(s, a / w, abs_tol=1e-14).value
    t0 = time.time()
    res = eval_auto(p, s, 1e-10)
    dt = time.time() - t0
    tot += dt
    rel = abs(res.value - want) / abs(want)
    worst[sigma] = max(worst.get(sigma, 0.0), rel)
    print(f"{sigma:6.2f} {t:5.1f} {rel:10.2e} {res.method.value:>16} {res.terms_used:12d} {dt:7.2f}")

print(f"\ntotal probe time (16 of 144 cells): {tot:.1f}s -> est full grid ~{tot*9:.0f}s")
for sig, w_ in sorted(worst.items()):
    print(f"worst rel err sigma={sig}: {w_:.2e} {'PASS' if w_ <= 1e-10 else 'FAIL'} vs 1e-10")
