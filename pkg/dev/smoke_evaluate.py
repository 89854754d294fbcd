import math, cmath, time
from barneszeta.params import BarnesParams
from barneszeta.oracle import hurwitz_zeta, equal_weight_reduction, naive_multisum
from barneszeta.evaluate import (
    eval_direct, eval_approx, eval_auto, boundary_correction,
    em_block_sum, boundary_identity_check, BoxRange, direct_tail_bound,
)
from barneszeta.errors import BudgetExceeded

ok = True
def check(name, got, want, tol):
    global ok
    err = abs(got - want)
    rel = err / max(abs(want), 1e-300)
    line = f"{name}: err={err:.3e} rel={rel:.3e} tol={tol:.1e}"
    if rel <= tol or err <= tol:
        print("PASS", line)
    else:
        ok = False
        print("FAIL", line, f"got={got} want={want}")

# 1) r=1 Hurwitz identity: zeta_1(s, a, (w)) = w^-s * zeta_H(s, a/w)
p = BarnesParams(a=1.0, w=(1.0,))
res = eval_direct(p, 4.0, 1e-9)
want = hurwitz_zeta(4.0, 1.0).value
check("direct r=1 zeta(4)", res.value, want, 1e-9)
assert abs(res.value - want) <= res.err_estimate + 1e-13, "rigorous bound violated"

p = BarnesParams(a=0.7, w=(0.35,))
s = 2.5 + 1.0j
res = eval_direct(p, s, 1e-9)
want = (0.35 ** -s) * hurwitz_zeta(s, 0.7 / 0.35).value
check("direct r=1 scaled complex", res.value, want, 2e-9)

# 2) r=2 equal weights vs reduction
p = BarnesParams(a=1.0, w=(1.0, 1.0))
res = eval_direct(p, 4.5, 1e-8)
ora = equal_weight_reduction(2, 4.5, 1.0)
check("direct r=2 (1,1) s=4.5", res.value, ora.value, 2e-8)
print("   terms:", res.terms_used, "bound:", res.err_estimate)

# 3) r=3 vs naive box (brute has its own truncation err)
p = BarnesParams(a=0.5, w=(1.0, 0.5, 2.0))
s = 5.0 + 2.0j
res = eval_direct(p, s, 1e-7)
brute = naive_multisum(p, s, cutoff=120)
brute_v = getattr(brute, "value", brute)
print("   r=3 direct vs brute:", abs(res.value - brute_v), "(brute tail-limited)")

# 4) eval_approx vs direct at sigma = r + 2
for a, w in [(1.0, (1.0,)), (0.5, (1.0, 2.0)), (1.3, (0.7, 1.1, 0.4))]:
    p = BarnesParams(a=a, w=w)
    r = p.r
    s = r + 2.0 + 0.8j
    ref = eval_direct(p, s, {1: 1e-10, 2: 1e-8, 3: 5e-5}[r])
    want = ref.value
    res = eval_approx(p, s, x=200.0)
    check(f"approx r={r} x=200 vs direct", res.value, want, 1e-3)
    assert abs(res.value - want) <= res.err_estimate + ref.err_estimate, (
        f"heuristic err too small: true {abs(res.value-want)} vs est {res.err_estimate}")

# 5) approx error decay: halving x -> error ~ 2^(sigma+1-r)
p = BarnesParams(a=0.5, w=(1.0, 2.0))
s = 2.5 + 0.0j
want = eval_approx(p, s, x=6400.0).value
e100 = abs(eval_approx(p, s, x=100.0).value - want)
e200 = abs(eval_approx(p, s, x=200.0).value - want)
print(f"   decay check: e(100)={e100:.3e} e(200)={e200:.3e} ratio={e100/e200:.2f} (expect ~{2**1.5:.2f})")

# 6) eval_auto: fallback path at sigma just above r, tight tol
p = BarnesParams(a=1.0, w=(1.0, 1.0))
res = eval_auto(p, 2.2 + 0.0j, 1e-6)
want = equal_weight_reduction(2, 2.2, 1.0).value
check("auto r=2 s=2.2 (fallback)", res.value, want, 1e-5)
print("   method:", res.method.value, "terms:", res.terms_used)

res = eval_auto(p, 4.0 + 0.0j, 1e-9)
print("   auto r=2 s=4 method:", res.method.value)

# continuation region: sigma in (r-1, r]
res = eval_auto(p, 1.5 + 30.0j, 1e-6)
res2 = eval_auto(p, 1.5 + 30.0j, 1e-7)
print(f"   continuation s=1.5+30j: {res.value:.10g} vs tighter {res2.value:.10g} diff={abs(res.value-res2.value):.2e}")

# 7) em_block_sum consistency: main(box (0,x)^r) == a^(r-s)/denom - boundary_correction
p = BarnesParams(a=0.8, w=(1.0, 0.6))
s = 2.3 + 1.1j
x = 37.0
denom = p.weight_product * (s - 1) * (s - 2)
main, rem = em_block_sum(p, s, BoxRange(((0.0, x), (0.0, x))))
lhs = main
rhs = (0.8 ** (2 - s)) * cmath.exp(0j) / denom - boundary_correction(p, s, x)
# spow(0.8, 2-s)
from barneszeta.numerics import spow
rhs = spow(0.8, 2 - s) / denom - boundary_correction(p, s, x)
check("em_block vs boundary_correction", lhs, rhs, 1e-12)
print("   remainder surrogate:", rem)

# 8) boundary identity: exact up to rounding
import random
random.seed(7)
worst = 0.0
for trial in range(60):
    r = random.randint(1, 5)
    a = random.uniform(0.2, 3.0)
    w = tuple(random.uniform(0.2, 2.5) for _ in range(r))
    s = complex(random.uniform(-2, r + 2), random.uniform(-20, 20))
    x = random.uniform(1.0, 50.0)
    N = x + random.uniform(0.0, 200.0)
    lhs, rhs = boundary_identity_check(a, w, s, x, N)
    scale = max(abs(lhs), abs(rhs), 1.0)
    worst = max(worst, abs(lhs - rhs) / scale)
print(f"   boundary identity worst rel diff over 60 random cases: {worst:.3e}")
assert worst < 1e-10, "identity check too loose"

# 9) budget errors
try:
    eval_direct(BarnesParams(1.0, (1.0, 1.0)), 2.05, 1e-10, term_cap=10**6)
    print("FAIL expected BudgetExceeded")
    ok = False
except BudgetExceeded as e:
    print("PASS BudgetExceeded:", str(e)[:80])

print("ALL OK" if ok else "SOME FAILED")
