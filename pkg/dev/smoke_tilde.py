import math
from itertools import product
from fractions import Fraction
from barneszeta.params import BarnesParams, WeightStructure, analyze_weights
from barneszeta.tilde import tilde_zeta, TildePath
from barneszeta.oracle import hurwitz_zeta
from barneszeta.evaluate import eval_direct
from barneszeta.errors import SigmaTooSmall, ConflictingDeclaration

ok = True
def check(name, got, want, tol):
    global ok
    rel = abs(got - want) / max(abs(want), 1e-300)
    status = "PASS" if rel <= tol else "FAIL"
    if status == "FAIL":
        ok = False
    print(f"{status} {name}: rel={rel:.3e} tol={tol:.1e} got={got!r} want={want!r}")

# criterion target: rational (1,1), a=1, sigma=1.75 == zeta(1.5)
p = BarnesParams(1.0, (1.0, 1.0))
st = WeightStructure.rational(1, (1, 1))
res = tilde_zeta(p, 1.75, st, 1e-10)
z15 = hurwitz_zeta(1.5, 1.0).value.real
check("rational (1,1) s=1.75 == zeta(1.5)", res.value, z15, 1e-9)
print("   err_estimate:", res.err_estimate, "path:", res.path.value)

# r=1: both paths agree
p1 = BarnesParams(1.0, (1.0,))
ind = tilde_zeta(p1, 1.2, WeightStructure.independent(), 1e-10)
rat = tilde_zeta(p1, 1.2, WeightStructure.rational(1, (1,)), 1e-10)
check("r=1 paths agree", ind.value, rat.value, 1e-10)
check("r=1 == zeta(2.4)", rat.value, hurwitz_zeta(2.4, 1.0).value.real, 1e-10)

# independent path == eval_direct at 2 sigma (bitwise)
p2 = BarnesParams(1.0, (1.0, math.sqrt(2.0)))
ind2 = tilde_zeta(p2, 1.5, WeightStructure.independent(), 2e-4)
dir2 = eval_direct(p2, 3.0, 2e-4)
assert ind2.value == dir2.value.real, "independent path must be the direct series"
print("PASS independent == eval_direct(2 sigma) bitwise")

# independence assumption vs rational on (1,1): must differ by >> rel_tol
ind11 = tilde_zeta(p, 1.75, WeightStructure.independent(), 3e-6)
check("independent (1,1) == zeta(2.5)", ind11.value, hurwitz_zeta(2.5, 1.0).value.real, 3e-6)
diff = abs(ind11.value - res.value)
print(f"{'PASS' if diff > 10 * 3e-6 else 'FAIL'} structures differ: {diff:.6f}")

# rational with q=2, p=(2,1)  (w = (1, 0.5)) vs brute-force diagonal
st3 = analyze_weights([Fraction(1), Fraction(1, 2)])
assert st3.q == 2 and st3.p == (2, 1), st3
pq = BarnesParams(1.0, (1.0, 0.5))
res3 = tilde_zeta(pq, 2.6, st3, 1e-10)
# brute force: k = m1*2 + m2*1 (units of 1/2); value sum R(k)^2 (1+k/2)^{-2s}
kmax = 400
R = [0] * (kmax + 1)
for m1 in range(0, kmax // 2 + 1):
    for m2 in range(0, kmax - 2 * m1 + 1):
        R[2 * m1 + m2] += 1
brute = sum(c * c * (1.0 + k / 2.0) ** (-2 * 2.6) for k, c in enumerate(R))
print(f"   q=2 brute(kmax=400)={brute:.12f} quasi={res3.value:.12f} diff={abs(brute-res3.value):.2e}")
# brute is a lower partial sum; its tail is ~ 2*200^-2.2/2.2 = 7.7e-6
bracket_ok = brute < res3.value <= brute + 2e-5
print(f"{'PASS' if bracket_ok else 'FAIL'} quasi within brute bracket")
if not bracket_ok:
    ok = False

# truncated fallback agrees with quasi path
from barneszeta.tilde import _rational_truncated, _rational_quasi
v_q, e_q = _rational_quasi(1.0, 2, (2, 1), 2, 2.6, 1e-10)
v_t, e_t = _rational_truncated(1.0, 2, (2, 1), 2.6, 1e-6, None)
check("quasi vs truncated fallback", v_t, v_q, 1e-5)
print(f"   truncated err_estimate={e_t:.2e} actual={abs(v_t-v_q):.2e} bound ok={abs(v_t-v_q)<=e_t}")
# slowly-converging truncation must raise
from barneszeta.errors import BudgetExceeded
try:
    _rational_truncated(1.0, 2, (2, 1), 1.8, 1e-6, None)
    print("FAIL expected BudgetExceeded (slow truncation)"); ok = False
except BudgetExceeded:
    print("PASS BudgetExceeded for slow truncation at sigma=1.8")

# monotone in sigma
vals = [tilde_zeta(p, s, st, 1e-9).value for s in (1.75, 2.0, 3.0)]
print(f"{'PASS' if vals[0] > vals[1] > vals[2] else 'FAIL'} monotone decreasing in sigma: {vals}")

# sigma too small
for structure, sig in ((WeightStructure.independent(), 0.9), (st, 1.5)):
    try:
        tilde_zeta(p, sig, structure, 1e-8)
        print("FAIL expected SigmaTooSmall"); ok = False
    except SigmaTooSmall:
        print("PASS SigmaTooSmall", structure.kind.value, sig)

# conflicting declaration: structure lattice mismatching actual weights
try:
    tilde_zeta(BarnesParams(1.0, (1.0, 0.7)), 1.8, st3, 1e-8)
    print("FAIL expected ConflictingDeclaration"); ok = False
except ConflictingDeclaration:
    print("PASS ConflictingDeclaration on mismatched lattice")

# a quasi case with larger L: p=(3,4,5), q=3  (w=(1, 4/3, 5/3)), r=3, sigma>2.5
st4 = WeightStructure.rational(3, (3, 4, 5))
p4 = BarnesParams(0.8, (1.0, 4.0 / 3.0, 5.0 / 3.0))
res4 = tilde_zeta(p4, 3.5, st4, 1e-10)
v_t4, e_t4 = _rational_truncated(0.8, 3, (3, 4, 5), 3.5, 1e-5, None)
check("r=3 L=60 quasi vs truncated", res4.value, v_t4, 3e-5)
print(f"   r=3 err_estimates quasi={res4.err_estimate:.2e} trunc={e_t4:.2e}")

print("ALL OK" if ok else "SOME FAILED")
