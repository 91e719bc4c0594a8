"""Brute-force SL3(F_q) oracle for pinning the terminal Deodhar factor.

Truth(a, y, omega, J; q) := #{ flags z in G/B_Omega :
      z in (a^-1 B+ a) y B_Omega   and   z in P_J^- B_Omega }
where B_Omega = omega B^- omega^-1, P_J^- = opposite standard parabolic.

Dictionary (validated on the interior factors): the I_infty side acts like
the standard POSITIVE Borel; the I side like the NEGATIVE; the incoming germ
parabolic like the opposite standard parabolic P_J^-.
"""
import itertools
from fractions import Fraction

def make_field(p):
    return list(range(p))

def mat_mul(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k]*B[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))

def mat_vec(A, v, p):
    n = len(A)
    return tuple(sum(A[i][k]*v[k] for k in range(n)) % p for i in range(n))

def rank(mat, p):
    m = [list(r) for r in mat]
    rows = len(m); cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None: continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p-2, p)
        m[r] = [(x*inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f*y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r

def birkhoff_class(g, p):
    """sigma with g in B^- sigma B^+ (B^- lower, B^+ upper): via ranks of
    top-left submatrices rows 0..i, cols 0..j (invariant under lower-left,
    upper-right multiplication)."""
    n = len(g)
    R = [[rank([row[:j+1] for row in g[:i+1]], p) for j in range(n)] for i in range(n)]
    def r(i, j):
        if i < 0 or j < 0: return 0
        return R[i][j]
    sigma = [None]*n
    for i in range(n):
        for j in range(n):
            if r(i, j) - r(i-1, j) - r(i, j-1) + r(i-1, j-1) == 1:
                sigma[j] = i
    return tuple(sigma)   # sigma[j] = i means sigma(e_j) = e_i

def perm_matrix(sig):
    n = len(sig)
    return tuple(tuple(1 if sig[j] == i else 0 for j in range(n)) for i in range(n))

def perm_mul(s, t):
    # (s*t)(e_j) = s(t(e_j))
    return tuple(s[t[j]] for j in range(len(s)))

def perm_inv(s):
    n = len(s)
    out = [0]*n
    for j in range(n):
        out[s[j]] = j
    return tuple(out)

# flags of F_p^3: (line generator, plane normal) canonical reps
def all_flags(p):
    vecs = [v for v in itertools.product(range(p), repeat=3) if any(v)]
    def normalize(v):
        lead = next(x for x in v if x)
        inv = pow(lead, p-2, p)
        return tuple((x*inv) % p for x in v)
    lines = sorted(set(normalize(v) for v in vecs))
    flags = []
    for line in lines:
        for nrm in lines:   # plane = {x: nrm . x = 0}
            if sum(a*b for a, b in zip(line, nrm)) % p == 0:
                flags.append((line, nrm))
    return flags

def flag_matrix(flag, p):
    """A matrix g with g<e1> = line, g<e1,e2> = plane."""
    line, nrm = flag
    # find v2 in plane, independent of line
    for v in itertools.product(range(p), repeat=3):
        if not any(v): continue
        if sum(a*b for a, b in zip(v, nrm)) % p: continue
        test = rank([list(line), list(v)], p)
        if test == 2:
            v2 = v
            break
    for v in itertools.product(range(p), repeat=3):
        if not any(v): continue
        if rank([list(line), list(v2), list(v)], p) == 3:
            v3 = v
            break
    g = tuple(tuple(col[i] for col in (line, v2, v3)) for i in range(3))
    return g

S3 = list(itertools.permutations(range(3)))
E3 = (0, 1, 2)

def word_of(sig):
    """Reduced word in adjacent transpositions s_0=(01), s_1=(12) acting on positions."""
    s = list(sig)
    word = []
    while True:
        done = True
        for i in range(2):
            # right descent: sigma(i) > sigma(i+1) as permutation matrix cols
            pass
        break
    # simple: bubble sort on the one-line notation sig as map j->sig[j]
    w = list(sig)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(2):
            if w[i] > w[i+1]:
                w[i], w[i+1] = w[i+1], w[i]
                word.append(i)
                changed = True
    return tuple(reversed(word))

def simple_perm(i):
    if i == 0: return (1, 0, 2)
    return (0, 2, 1)

def length(sig):
    return sum(1 for a in range(3) for b in range(a+1, 3) if sig[a] > sig[b])

def truth(a, y, omega, J, p):
    """Count flags z with class_{(a^-1 B+ a), B_Omega}(z) = y and z in P_J^- B_Omega."""
    aM = perm_matrix(a)
    aMinv = perm_matrix(perm_inv(a))
    oM = perm_matrix(omega)
    count = 0
    WJ = set()
    # subgroup of S3 generated by J
    frontier = [E3]
    WJ = {E3}
    while frontier:
        x = frontier.pop()
        for i in J:
            ysub = perm_mul(x, simple_perm(i))
            if ysub not in WJ:
                WJ.add(ysub)
                frontier.append(ysub)
    for flag in all_flags(p):
        g = flag_matrix(flag, p)
        # here "flag" represents the coset z B_Omega where z = g * omega^{-1}:
        # points of G/B_Omega <-> flags via z B_Omega -> z omega <std flag of B^- ... >
        # We parametrize points of G/B_Omega directly by z = g (any rep of a coset
        # zB_Omega is determined by the chamber it fixes). Use: chamber of z = flag(z*omega... )
        # Simplest: work with z as the group element whose B_Omega-coset we test:
        z = g
        # membership 1: z in a^{-1} B+ a y B_Omega  <=>  a z omega in B+ (a y omega) B^-
        azo = mat_mul(mat_mul(aM, z, p), oM, p)
        # (B+, B-)-class: g in B+ sigma B- <=> transpose-flip of Birkhoff: use
        # J0 g J0 in B- sigma' B+ with J0 the antidiagonal flip: sigma' = J0 sigma J0
        cls = anti_birkhoff(azo, p)
        want = perm_mul(perm_mul(a, y), omega)
        m1 = (cls == want)
        # membership 2: z in P_J^- B_Omega <=> (B-, B-)-class of (z omega) in W_J omega ...
        zo = mat_mul(z, oM, p)
        cls2 = bruhat_minus_class(zo, p)
        m2 = any(cls2 == perm_mul(t, omega) for t in WJ)
        if m1 and m2:
            count += 1
    # each B_Omega-coset corresponds to exactly one flag? z ranges over flag reps:
    # flags of G/B_Omega are in bijection with chambers; our z-rep per flag is one
    # coset rep of zB+ not zB_Omega. Need care: we want cosets z B_Omega. Map:
    # z B_Omega <-> the flag fixed by z B_Omega z^-1-chamber = z*omega<std>. We
    # enumerated g over reps of G/B+ (flags); setting z := g*omega^{-1} gives regs of
    # G/B_Omega... but memberships above used z=g directly. Caller beware: we instead
    # enumerate z-cosets via z = g * omega^{-1}.
    return count

def anti_birkhoff(g, p):
    """sigma with g in B+ sigma B-."""
    J0 = perm_matrix((2,1,0))
    flipped = mat_mul(mat_mul(J0, g, p), J0, p)
    cls = birkhoff_class(flipped, p)
    w0 = (2,1,0)
    return perm_mul(perm_mul(w0, cls), w0)

def bruhat_minus_class(g, p):
    """sigma with g in B- sigma B-."""
    J0 = perm_matrix((2,1,0))
    flipped = mat_mul(g, J0, p)   # B- sigma B- = B- (sigma w0) B+ w0
    cls = birkhoff_class(flipped, p)
    return perm_mul(cls, (2,1,0))

# quick self-tests of class extraction
import random
random.seed(0)
def rand_lower(p):
    return tuple(tuple(1 if i==j else (random.randrange(p) if i>j else 0) for j in range(3)) for i in range(3))
def rand_upper(p):
    return tuple(tuple(1 if i==j else (random.randrange(p) if i<j else 0) for j in range(3)) for i in range(3))

p = 5
ok = True
for _ in range(200):
    sig = random.choice(S3)
    g = mat_mul(mat_mul(rand_lower(p), perm_matrix(sig), p), rand_upper(p), p)
    if birkhoff_class(g, p) != sig:
        print("birkhoff extraction broken for", sig); ok = False; break
for _ in range(200):
    sig = random.choice(S3)
    g = mat_mul(mat_mul(rand_upper(p), perm_matrix(sig), p), rand_lower(p), p)
    if anti_birkhoff(g, p) != sig:
        print("anti-birkhoff broken for", sig); ok = False; break
for _ in range(200):
    sig = random.choice(S3)
    g = mat_mul(mat_mul(rand_lower(p), perm_matrix(sig), p), rand_lower(p), p)
    if bruhat_minus_class(g, p) != sig:
        print("bruhat-minus broken for", sig); ok = False; break
print("class extraction self-tests:", "ok" if ok else "BROKEN")
