"""Independent high-precision oracles for values frozen into the C++ tests.

Run: python3 tests/oracles/compute_oracles.py
Nothing here imports or calls the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 40
E = mp.e


def zyg_G(p, a, t):
    return t**p * mp.log(E + t) ** a


def zyg_g_fd(p, a, t, h=mp.mpf("1e-6")):
    # central difference at high precision
    return (zyg_G(p, a, t + h) - zyg_G(p, a, t - h)) / (2 * h)


def zyg_tail(t):
    return t / ((E + t) * mp.log(E + t))


def dense_max(f, lo=mp.mpf("1e-8"), hi=mp.mpf("1e8"), n=100000):
    llo, lhi = mp.log(lo), mp.log(hi)
    best, bi = None, 0
    pts = [mp.e ** (llo + (lhi - llo) * i / (n - 1)) for i in range(n)]
    for i, t in enumerate(pts):
        v = f(t)
        if best is None or v > best:
            best, bi = v, i
    a, b = pts[max(bi - 1, 0)], pts[min(bi + 1, n - 1)]
    tstar = mp.findroot(lambda x: mp.diff(f, x), (a + b) / 2)
    return f(tstar), tstar


print("zygmund(2,1) G(1)      =", mp.nstr(zyg_G(2, 1, mp.mpf(1)), 20))
print("zygmund(2,1) g(1) exact=", mp.nstr(2 * mp.log(E + 1) + 1 / (E + 1), 20))
print("zygmund(2,1) g(1) fd   =", mp.nstr(zyg_g_fd(2, 1, mp.mpf(1)), 20))
m, ts = dense_max(zyg_tail)
print("max t/((e+t)log(e+t))  =", mp.nstr(m, 20), "at t =", mp.nstr(ts, 20))
print("zygmund(2,1)   s_G     =", mp.nstr(2 + m, 20))
print("zygmund(2,-.5) i_G     =", mp.nstr(2 - mp.mpf("0.5") * m, 20))
print("zygmund(1.5,-.3) i_G   =", mp.nstr(mp.mpf("1.5") - mp.mpf("0.3") * m, 20))
print("JG zyg(2,1) r=2,s=1,l=0=", mp.nstr(zyg_G(2, 1, mp.mpf(2)) + zyg_G(2, 1, mp.mpf(1)), 20))
# shifted power p=3, a=1, t=1: int_0^1 3(1+s)s ds
print("G_1(1) power 3         =", mp.nstr(mp.quad(lambda s: 3 * (1 + s) * s, [0, 1]), 20))
# Young conjugate of t^4 at s and 2s; ratio should be 2^(4/3)
conj = lambda s, p: mp.findroot(lambda t: s - p * t ** (p - 1), 1) * s - mp.findroot(lambda t: s - p * t ** (p - 1), 1) ** p
print("conj t^4 ratio 2s/s    =", mp.nstr(conj(mp.mpf(2), 4) / conj(mp.mpf(1), 4), 20), "2^(4/3) =", mp.nstr(mp.mpf(2) ** (mp.mpf(4) / 3), 20))
# Shifted Zygmund(2,1) at a=0.7, t=2.3 by quadrature of g(a+s)s/(a+s)
g21 = lambda t: 2 * t * mp.log(E + t) + t**2 / (E + t)
print("G_a zyg(2,1) a=.7 t=2.3=", mp.nstr(mp.quad(lambda s: g21(mp.mpf("0.7") + s) * s / (mp.mpf("0.7") + s), [0, mp.mpf("2.3")]), 20))
# Conjugate of Zygmund(2,1) at s=3 by direct sup
f = lambda t: 3 * t - zyg_G(2, 1, t)
tstar = mp.findroot(lambda t: 3 - g21(t), 0.5)
print("conj zyg(2,1) s=3      =", mp.nstr(f(tstar), 20))
# Extremes of J_p / ((r+s)^(p-2) |xi-eta|^2). Both sides are homogeneous and
# affine in lambda, so extremes sit at lambda = +-1 over x = s/r in [0, 1].
def jp_ratio(p, x, lam):
    jp = 1 + x**p - lam * x * (1 + x ** (p - 2))  # r = 1, s = x > 0
    return jp / ((1 + x) ** (p - 2) * (1 + x * x - 2 * lam * x))
for p in (mp.mpf("1.5"), mp.mpf(3)):
    xs = [mp.mpf(i) / 4000 for i in range(1, 4000)] + [mp.mpf(10) ** -k for k in range(4, 30)] + [1 - mp.mpf(10) ** -k for k in range(4, 12)]
    vals = [jp_ratio(p, x, lam) for x in xs for lam in (-1, 1)] + [jp_ratio(p, mp.mpf(1), -1)]
    print("Jp/sum_weighted p=%s  inf =" % p, mp.nstr(min(vals), 12), " sup =", mp.nstr(max(vals), 12))


# Pointwise pair quantities from explicit planar vectors xi = (r, 0),
# eta = (s l, s sqrt(1 - l^2)).
def vecs(r, s, l):
    r, s, l = mp.mpf(r), mp.mpf(s), mp.mpf(l)
    return (r, mp.mpf(0)), (s * l, s * mp.sqrt(1 - l * l))


def nrm(v):
    return mp.sqrt(v[0] ** 2 + v[1] ** 2)


def rad(v, phi):
    n = nrm(v)
    return (mp.mpf(0), mp.mpf(0)) if n == 0 else (phi(n) * v[0], phi(n) * v[1])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


x, y = vecs(2, 1, "0.3")
d = sub(x, y)
p = mp.mpf("2.5")
print("Jp p=2.5 (2,1,.3)      =", mp.nstr(dot(sub(rad(x, lambda t: t ** (p - 2)), rad(y, lambda t: t ** (p - 2))), d), 20))
vp = lambda v: rad(v, lambda t: t ** ((p - 2) / 2))
print("VpDiffSq p=2.5 (2,1,.3)=", mp.nstr(dot(sub(vp(x), vp(y)), sub(vp(x), vp(y))), 20))
vb = lambda v: rad(v, lambda t: (1 + t * t) ** ((mp.mpf("1.5") - 2) / 4))
print("VbarDiffSq p=1.5 mu=1  =", mp.nstr(dot(sub(vb(x), vb(y)), sub(vb(x), vb(y))), 20))
vg = lambda v: rad(v, lambda t: mp.sqrt(zyg_G(2, 1, t)) / t)
print("VGDiffSq zyg(2,1)      =", mp.nstr(dot(sub(vg(x), vg(y)), sub(vg(x), vg(y))), 20))
ag = lambda v: rad(v, lambda t: zyg_G(2, 1, t) / t**2)
print("JG zyg(2,1) (2,1,.3)   =", mp.nstr(dot(sub(ag(x), ag(y)), d), 20))
dn = nrm(d)
print("|xi-eta| (2,1,.3)      =", mp.nstr(dn, 20))
print("CalG zyg(2,1) (2,1,.3) =", mp.nstr(zyg_G(2, 1, mp.mpf(2)) / 4 * dn**2, 20))
print("GShift zyg(2,1)(2,1,.3)=", mp.nstr(mp.quad(lambda u: g21(2 + u) * u / (2 + u), [0, dn]), 20))
print("GFrac zyg(2,1) (2,1,.3)=", mp.nstr(g21(mp.mpf(3)) / 3 * dn**2, 20))
