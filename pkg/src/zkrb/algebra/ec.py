"""G1/G2 group arithmetic (Jacobian internals, affine API) and point codecs.

Internal helpers operate on raw coordinate tuples for speed; the `G1Point`
and `G2Point` classes are thin immutable wrappers used at module boundaries.
Compressed encoding: x-coordinate (little-endian limbs) followed by one sign
byte (0/1 selects the y root, 2 marks the identity).
"""

from __future__ import annotations

from ..errors import UsageError
from .field import ScalarFieldElement
from .params import (
    BASE_BYTES,
    CURVE_B,
    G1_GENERATOR,
    G2_GENERATOR,
    GLV_BASIS_G1,
    GLV_BASIS_G2,
    GLV_BETA,
    P,
    PSI_X_COEFF,
    PSI_Y_COEFF,
    R,
    TWIST_B,
    mpz,
)

_P = P
_R = int(R)
_HALF_P = (int(P) - 1) // 2
_INV2 = pow(mpz(2), _P - 2, _P)
_SQRT_EXP = (int(P) + 1) // 4  # p = 3 mod 4

# ---------------------------------------------------------------------------
# F_p2 helpers, (c0, c1) = c0 + c1*i with i^2 = -1
# ---------------------------------------------------------------------------

_F2_ZERO = (mpz(0), mpz(0))
_F2_ONE = (mpz(1), mpz(0))


def _f2_add(a, b):
    return ((a[0] + b[0]) % _P, (a[1] + b[1]) % _P)


def _f2_sub(a, b):
    return ((a[0] - b[0]) % _P, (a[1] - b[1]) % _P)


def _f2_neg(a):
    return (-a[0] % _P, -a[1] % _P)


def _f2_mul(a, b):
    a0, a1 = a
    b0, b1 = b
    t0 = a0 * b0
    t1 = a1 * b1
    return ((t0 - t1) % _P, ((a0 + a1) * (b0 + b1) - t0 - t1) % _P)


def _f2_sqr(a):
    a0, a1 = a
    return ((a0 + a1) * (a0 - a1) % _P, 2 * a0 * a1 % _P)


def _f2_scale(a, k):
    return (a[0] * k % _P, a[1] * k % _P)


def _f2_inv(a):
    a0, a1 = a
    norm = (a0 * a0 + a1 * a1) % _P
    if not norm:
        raise ZeroDivisionError("inversion of zero in F_p2")
    ninv = pow(norm, _P - 2, _P)
    return (a0 * ninv % _P, -a1 * ninv % _P)


def _f2_sqrt(a):
    """Square root in F_p2 for p = 3 mod 4, or None if `a` is a non-residue."""
    c0, c1 = a[0] % _P, a[1] % _P
    if not c1:
        s = pow(c0, _SQRT_EXP, _P)
        if s * s % _P == c0:
            return (s, mpz(0))
        t = -c0 % _P
        s = pow(t, _SQRT_EXP, _P)
        if s * s % _P == t:
            return (mpz(0), s)
        return None
    norm = (c0 * c0 + c1 * c1) % _P
    s = pow(norm, _SQRT_EXP, _P)
    if s * s % _P != norm:
        return None
    t = (c0 + s) * _INV2 % _P
    x0 = pow(t, _SQRT_EXP, _P)
    if x0 * x0 % _P != t:
        t = (c0 - s) * _INV2 % _P
        x0 = pow(t, _SQRT_EXP, _P)
        if x0 * x0 % _P != t:
            return None
    x1 = c1 * pow(2 * x0 % _P, _P - 2, _P) % _P
    cand = (x0, x1)
    return cand if _f2_sqr(cand) == (c0, c1) else None


# ---------------------------------------------------------------------------
# G1: Jacobian (X, Y, Z), identity Z = 0; affine (x, y) or None
# ---------------------------------------------------------------------------

_G1_INF = (mpz(1), mpz(1), mpz(0))


def _g1_on_curve(x, y):
    return (y * y - x * x * x - CURVE_B) % _P == 0


def _g1_double(pt):
    X1, Y1, Z1 = pt
    if not Z1 or not Y1:
        return _G1_INF
    A = X1 * X1 % _P
    B = Y1 * Y1 % _P
    C = B * B % _P
    D = 2 * ((X1 + B) * (X1 + B) - A - C) % _P
    E = 3 * A % _P
    F = E * E % _P
    X3 = (F - 2 * D) % _P
    Y3 = (E * (D - X3) - 8 * C) % _P
    Z3 = 2 * Y1 * Z1 % _P
    return (X3, Y3, Z3)


def _g1_add(p, q):
    X1, Y1, Z1 = p
    X2, Y2, Z2 = q
    if not Z1:
        return q
    if not Z2:
        return p
    Z1Z1 = Z1 * Z1 % _P
    Z2Z2 = Z2 * Z2 % _P
    U1 = X1 * Z2Z2 % _P
    U2 = X2 * Z1Z1 % _P
    S1 = Y1 * Z2 * Z2Z2 % _P
    S2 = Y2 * Z1 * Z1Z1 % _P
    if U1 == U2:
        if S1 != S2:
            return _G1_INF
        return _g1_double(p)
    H = (U2 - U1) % _P
    I = 4 * H * H % _P
    J = H * I % _P
    rr = 2 * (S2 - S1) % _P
    V = U1 * I % _P
    X3 = (rr * rr - J - 2 * V) % _P
    Y3 = (rr * (V - X3) - 2 * S1 * J) % _P
    Z3 = ((Z1 + Z2) * (Z1 + Z2) - Z1Z1 - Z2Z2) % _P * H % _P
    return (X3, Y3, Z3)


def _g1_add_affine(p, q_aff):
    """Mixed addition: Jacobian p + affine q (q is not identity)."""
    X1, Y1, Z1 = p
    if not Z1:
        return (q_aff[0], q_aff[1], mpz(1))
    x2, y2 = q_aff
    Z1Z1 = Z1 * Z1 % _P
    U2 = x2 * Z1Z1 % _P
    S2 = y2 * Z1 * Z1Z1 % _P
    if U2 == X1:
        if S2 != Y1:
            return _G1_INF
        return _g1_double(p)
    H = (U2 - X1) % _P
    HH = H * H % _P
    I = 4 * HH % _P
    J = H * I % _P
    rr = 2 * (S2 - Y1) % _P
    V = X1 * I % _P
    X3 = (rr * rr - J - 2 * V) % _P
    Y3 = (rr * (V - X3) - 2 * Y1 * J) % _P
    Z3 = (Z1 + H) * (Z1 + H) % _P
    Z3 = (Z3 - Z1Z1 - HH) % _P
    return (X3, Y3, Z3)


def _g1_neg(p):
    return (p[0], -p[1] % _P, p[2])


def _g1_to_affine(p):
    X, Y, Z = p
    if not Z:
        return None
    zinv = pow(Z, _P - 2, _P)
    z2 = zinv * zinv % _P
    return (X * z2 % _P, Y * z2 % _P * zinv % _P)


def _g1_batch_to_affine(points):
    """Normalize many Jacobian points with a single field inversion."""
    zs = [pt[2] for pt in points if pt[2]]
    if not zs:
        return [None] * len(points)
    n = len(zs)
    prefix = [mpz(1)] * (n + 1)
    for i, z in enumerate(zs):
        prefix[i + 1] = prefix[i] * z % _P
    inv = pow(prefix[n], _P - 2, _P)
    zinvs = [None] * n
    for i in range(n - 1, -1, -1):
        zinvs[i] = prefix[i] * inv % _P
        inv = inv * zs[i] % _P
    out = []
    j = 0
    for pt in points:
        X, Y, Z = pt
        if not Z:
            out.append(None)
            continue
        zi = zinvs[j]
        j += 1
        z2 = zi * zi % _P
        out.append((X * z2 % _P, Y * z2 % _P * zi % _P))
    return out


def _round_div(a, b):
    """Nearest integer to a/b with exact integer arithmetic."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def _glv_split(k, basis):
    """Babai rounding against a short lattice basis: k = k1 + k2*lambda mod r."""
    (a1, b1), (a2, b2) = basis
    det = a1 * b2 - a2 * b1
    m1 = _round_div(k * b2, det)
    m2 = _round_div(-k * b1, det)
    return (k - m1 * a1 - m2 * a2, -m1 * b1 - m2 * b2)


def _g1_mul_plain(aff, k):
    """Windowed scalar multiplication; `aff` affine (not None), k > 0."""
    if k == 1:
        return (aff[0], aff[1], mpz(1))
    # 4-bit window table of affine multiples 1P..15P
    table_jac = [(aff[0], aff[1], mpz(1))]
    for _ in range(14):
        table_jac.append(_g1_add_affine(table_jac[-1], aff))
    table = _g1_batch_to_affine(table_jac)
    acc = _G1_INF
    started = False
    for shift in range(((k.bit_length() + 3) // 4) * 4 - 4, -1, -4):
        if started:
            acc = _g1_double(acc)
            acc = _g1_double(acc)
            acc = _g1_double(acc)
            acc = _g1_double(acc)
        w = (k >> shift) & 0xF
        if w:
            acc = _g1_add_affine(acc, table[w - 1])
            started = True
    return acc


def _g1_mul_dual(p1, k1, p2, k2):
    """acc = k1*p1 + k2*p2 with interleaved windows and one shared inversion."""
    if not k1:
        return _g1_mul_plain(p2, k2) if k2 else _G1_INF
    if not k2:
        return _g1_mul_plain(p1, k1)
    t1 = [(p1[0], p1[1], mpz(1))]
    for _ in range(14):
        t1.append(_g1_add_affine(t1[-1], p1))
    t2 = [(p2[0], p2[1], mpz(1))]
    for _ in range(14):
        t2.append(_g1_add_affine(t2[-1], p2))
    tables = _g1_batch_to_affine(t1 + t2)
    ta, tb = tables[:15], tables[15:]
    bits = max(k1.bit_length(), k2.bit_length())
    acc = _G1_INF
    started = False
    for shift in range(((bits + 3) // 4) * 4 - 4, -1, -4):
        if started:
            acc = _g1_double(acc)
            acc = _g1_double(acc)
            acc = _g1_double(acc)
            acc = _g1_double(acc)
        w = (k1 >> shift) & 0xF
        if w:
            acc = _g1_add_affine(acc, ta[w - 1])
            started = True
        w = (k2 >> shift) & 0xF
        if w:
            acc = _g1_add_affine(acc, tb[w - 1])
            started = True
    return acc


def _g1_mul(aff, k):
    """Scalar multiplication; GLV-decomposed for full-width scalars."""
    k = int(k) % _R
    if aff is None or k == 0:
        return _G1_INF
    if k.bit_length() <= 140:
        return _g1_mul_plain(aff, k)
    k1, k2 = _glv_split(k, GLV_BASIS_G1)
    p1 = aff if k1 >= 0 else (aff[0], -aff[1] % _P)
    endo = (aff[0] * GLV_BETA % _P, aff[1])
    p2 = endo if k2 >= 0 else (endo[0], -endo[1] % _P)
    return _g1_mul_dual(p1, abs(k1), p2, abs(k2))


# ---------------------------------------------------------------------------
# G2: same structure with F_p2 coordinates
# ---------------------------------------------------------------------------

_G2_INF = (_F2_ONE, _F2_ONE, _F2_ZERO)


def _g2_on_curve(x, y):
    rhs = _f2_add(_f2_mul(_f2_sqr(x), x), TWIST_B)
    return _f2_sqr(y) == rhs


def _g2_double(pt):
    # flattened F_p2 arithmetic: (a0, a1)*(b0, b1) via 3 base-field products
    (x0, x1), (y0, y1), (z0, z1) = pt
    if not (z0 or z1) or not (y0 or y1):
        return _G2_INF
    p = _P
    # A = X^2, B = Y^2, C = B^2
    a0 = (x0 + x1) * (x0 - x1) % p
    a1 = 2 * x0 * x1 % p
    b0 = (y0 + y1) * (y0 - y1) % p
    b1 = 2 * y0 * y1 % p
    c0 = (b0 + b1) * (b0 - b1) % p
    c1 = 2 * b0 * b1 % p
    # D = 2*((X+B)^2 - A - C)
    t0, t1 = x0 + b0, x1 + b1
    d0 = ((t0 + t1) * (t0 - t1) - a0 - c0) % p
    d1 = (2 * t0 * t1 - a1 - c1) % p
    d0, d1 = 2 * d0 % p, 2 * d1 % p
    # E = 3A, F = E^2
    e0, e1 = 3 * a0 % p, 3 * a1 % p
    f0 = (e0 + e1) * (e0 - e1) % p
    f1 = 2 * e0 * e1 % p
    nx0 = (f0 - 2 * d0) % p
    nx1 = (f1 - 2 * d1) % p
    # Y3 = E*(D - X3) - 8C
    s0, s1 = d0 - nx0, d1 - nx1
    w0 = e0 * s0
    w1 = e1 * s1
    ny0 = (w0 - w1 - 8 * c0) % p
    ny1 = ((e0 + e1) * (s0 + s1) - w0 - w1 - 8 * c1) % p
    # Z3 = 2*Y*Z
    w0 = y0 * z0
    w1 = y1 * z1
    nz0 = 2 * (w0 - w1) % p
    nz1 = 2 * ((y0 + y1) * (z0 + z1) - w0 - w1) % p
    return ((nx0, nx1), (ny0, ny1), (nz0, nz1))


def _g2_add(p, q):
    X1, Y1, Z1 = p
    X2, Y2, Z2 = q
    if Z1 == _F2_ZERO:
        return q
    if Z2 == _F2_ZERO:
        return p
    Z1Z1 = _f2_sqr(Z1)
    Z2Z2 = _f2_sqr(Z2)
    U1 = _f2_mul(X1, Z2Z2)
    U2 = _f2_mul(X2, Z1Z1)
    S1 = _f2_mul(_f2_mul(Y1, Z2), Z2Z2)
    S2 = _f2_mul(_f2_mul(Y2, Z1), Z1Z1)
    if U1 == U2:
        if S1 != S2:
            return _G2_INF
        return _g2_double(p)
    H = _f2_sub(U2, U1)
    I = _f2_sqr(_f2_add(H, H))
    J = _f2_mul(H, I)
    rr = _f2_sub(S2, S1)
    rr = _f2_add(rr, rr)
    V = _f2_mul(U1, I)
    X3 = _f2_sub(_f2_sub(_f2_sqr(rr), J), _f2_add(V, V))
    S1J = _f2_mul(S1, J)
    Y3 = _f2_sub(_f2_mul(rr, _f2_sub(V, X3)), _f2_add(S1J, S1J))
    Z3 = _f2_sub(_f2_sub(_f2_sqr(_f2_add(Z1, Z2)), Z1Z1), Z2Z2)
    Z3 = _f2_mul(Z3, H)
    return (X3, Y3, Z3)


def _g2_add_affine(pt, q_aff):
    (x0, x1), (y0, y1), (z0, z1) = pt
    if not (z0 or z1):
        return (q_aff[0], q_aff[1], _F2_ONE)
    (qx0, qx1), (qy0, qy1) = q_aff
    p = _P
    # Z1Z1 = Z^2; U2 = x2*Z1Z1; S2 = y2*Z*Z1Z1
    zz0 = (z0 + z1) * (z0 - z1) % p
    zz1 = 2 * z0 * z1 % p
    w0 = qx0 * zz0
    w1 = qx1 * zz1
    u20 = (w0 - w1) % p
    u21 = ((qx0 + qx1) * (zz0 + zz1) - w0 - w1) % p
    w0 = z0 * zz0
    w1 = z1 * zz1
    zc0 = (w0 - w1) % p
    zc1 = ((z0 + z1) * (zz0 + zz1) - w0 - w1) % p
    w0 = qy0 * zc0
    w1 = qy1 * zc1
    s20 = (w0 - w1) % p
    s21 = ((qy0 + qy1) * (zc0 + zc1) - w0 - w1) % p
    if u20 == x0 and u21 == x1:
        if s20 != y0 or s21 != y1:
            return _G2_INF
        return _g2_double(pt)
    h0, h1 = (u20 - x0) % p, (u21 - x1) % p
    hh0 = (h0 + h1) * (h0 - h1) % p
    hh1 = 2 * h0 * h1 % p
    i0, i1 = 4 * hh0 % p, 4 * hh1 % p
    w0 = h0 * i0
    w1 = h1 * i1
    j0 = (w0 - w1) % p
    j1 = ((h0 + h1) * (i0 + i1) - w0 - w1) % p
    r0, r1 = 2 * (s20 - y0) % p, 2 * (s21 - y1) % p
    w0 = x0 * i0
    w1 = x1 * i1
    v0 = (w0 - w1) % p
    v1 = ((x0 + x1) * (i0 + i1) - w0 - w1) % p
    nx0 = ((r0 + r1) * (r0 - r1) - j0 - 2 * v0) % p
    nx1 = (2 * r0 * r1 - j1 - 2 * v1) % p
    s0, s1 = v0 - nx0, v1 - nx1
    w0 = r0 * s0
    w1 = r1 * s1
    t0 = (w0 - w1) % p
    t1 = ((r0 + r1) * (s0 + s1) - w0 - w1) % p
    w0 = y0 * j0
    w1 = y1 * j1
    yj0 = (w0 - w1) % p
    yj1 = ((y0 + y1) * (j0 + j1) - w0 - w1) % p
    ny0 = (t0 - 2 * yj0) % p
    ny1 = (t1 - 2 * yj1) % p
    zh0, zh1 = z0 + h0, z1 + h1
    nz0 = ((zh0 + zh1) * (zh0 - zh1) - zz0 - hh0) % p
    nz1 = (2 * zh0 * zh1 - zz1 - hh1) % p
    return ((nx0, nx1), (ny0, ny1), (nz0, nz1))


def _g2_neg(p):
    return (p[0], _f2_neg(p[1]), p[2])


def _g2_to_affine(p):
    X, Y, Z = p
    if Z == _F2_ZERO:
        return None
    zinv = _f2_inv(Z)
    z2 = _f2_sqr(zinv)
    return (_f2_mul(X, z2), _f2_mul(_f2_mul(Y, z2), zinv))


def _g2_batch_to_affine(points):
    # one F_p2 inversion via prefix products
    zs = [pt[2] for pt in points if pt[2] != _F2_ZERO]
    if not zs:
        return [None] * len(points)
    n = len(zs)
    prefix = [_F2_ONE] * (n + 1)
    for i, z in enumerate(zs):
        prefix[i + 1] = _f2_mul(prefix[i], z)
    inv = _f2_inv(prefix[n])
    zinvs = [None] * n
    for i in range(n - 1, -1, -1):
        zinvs[i] = _f2_mul(prefix[i], inv)
        inv = _f2_mul(inv, zs[i])
    out = []
    j = 0
    for pt in points:
        X, Y, Z = pt
        if Z == _F2_ZERO:
            out.append(None)
            continue
        zi = zinvs[j]
        j += 1
        z2 = _f2_sqr(zi)
        out.append((_f2_mul(X, z2), _f2_mul(_f2_mul(Y, z2), zi)))
    return out


def _g2_mul_plain(aff, k):
    if k == 1:
        return (aff[0], aff[1], _F2_ONE)
    table_jac = [(aff[0], aff[1], _F2_ONE)]
    for _ in range(14):
        table_jac.append(_g2_add_affine(table_jac[-1], aff))
    table = _g2_batch_to_affine(table_jac)
    acc = _G2_INF
    started = False
    for shift in range(((k.bit_length() + 3) // 4) * 4 - 4, -1, -4):
        if started:
            acc = _g2_double(acc)
            acc = _g2_double(acc)
            acc = _g2_double(acc)
            acc = _g2_double(acc)
        w = (k >> shift) & 0xF
        if w:
            acc = _g2_add_affine(acc, table[w - 1])
            started = True
    return acc


def _g2_endo(aff):
    """Twist-Frobenius endomorphism psi; acts as multiplication by 6u^2."""
    x, y = aff
    return (
        _f2_mul((x[0], -x[1] % _P), PSI_X_COEFF),
        _f2_mul((y[0], -y[1] % _P), PSI_Y_COEFF),
    )


def _g2_mul_dual(p1, k1, p2, k2):
    if not k1:
        return _g2_mul_plain(p2, k2) if k2 else _G2_INF
    if not k2:
        return _g2_mul_plain(p1, k1)
    t1 = [(p1[0], p1[1], _F2_ONE)]
    for _ in range(14):
        t1.append(_g2_add_affine(t1[-1], p1))
    t2 = [(p2[0], p2[1], _F2_ONE)]
    for _ in range(14):
        t2.append(_g2_add_affine(t2[-1], p2))
    tables = _g2_batch_to_affine(t1 + t2)
    ta, tb = tables[:15], tables[15:]
    bits = max(k1.bit_length(), k2.bit_length())
    acc = _G2_INF
    started = False
    for shift in range(((bits + 3) // 4) * 4 - 4, -1, -4):
        if started:
            acc = _g2_double(acc)
            acc = _g2_double(acc)
            acc = _g2_double(acc)
            acc = _g2_double(acc)
        w = (k1 >> shift) & 0xF
        if w:
            acc = _g2_add_affine(acc, ta[w - 1])
            started = True
        w = (k2 >> shift) & 0xF
        if w:
            acc = _g2_add_affine(acc, tb[w - 1])
            started = True
    return acc


def _g2_mul(aff, k):
    k = int(k) % _R
    if aff is None or k == 0:
        return _G2_INF
    if k.bit_length() <= 140:
        return _g2_mul_plain(aff, k)
    k1, k2 = _glv_split(k, GLV_BASIS_G2)
    p1 = aff if k1 >= 0 else (aff[0], _f2_neg(aff[1]))
    endo = _g2_endo(aff)
    p2 = endo if k2 >= 0 else (endo[0], _f2_neg(endo[1]))
    return _g2_mul_dual(p1, abs(k1), p2, abs(k2))


def _g2_in_subgroup(aff) -> bool:
    return _g2_mul(aff, _R)[2] == _F2_ZERO


# ---------------------------------------------------------------------------
# Point classes
# ---------------------------------------------------------------------------


def _scalar_int(k):
    if isinstance(k, ScalarFieldElement):
        return int(k.value)
    if isinstance(k, int):
        return k
    try:
        return int(k)
    except (TypeError, ValueError):
        raise TypeError(f"scalar must be int or ScalarFieldElement, got {type(k).__name__}")


class G1Point:
    """Point in the order-r group on y^2 = x^3 + 3; immutable, affine."""

    __slots__ = ("_c",)

    def __init__(self, x: int, y: int):
        x, y = mpz(x) % _P, mpz(y) % _P
        if not _g1_on_curve(x, y):
            raise UsageError("point is not on the G1 curve")
        object.__setattr__(self, "_c", (x, y))

    def __setattr__(self, name, value):
        raise AttributeError("G1Point is immutable")

    @classmethod
    def _wrap(cls, aff) -> "G1Point":
        pt = object.__new__(cls)
        object.__setattr__(pt, "_c", aff)
        return pt

    @classmethod
    def identity(cls) -> "G1Point":
        return cls._wrap(None)

    @classmethod
    def generator(cls) -> "G1Point":
        return cls._wrap(G1_GENERATOR)

    @property
    def is_identity(self) -> bool:
        return self._c is None

    @property
    def xy(self):
        return None if self._c is None else (int(self._c[0]), int(self._c[1]))

    def __add__(self, other: "G1Point") -> "G1Point":
        if self._c is None:
            return other
        if other._c is None:
            return self
        res = _g1_add_affine((self._c[0], self._c[1], mpz(1)), other._c)
        return G1Point._wrap(_g1_to_affine(res))

    def __neg__(self) -> "G1Point":
        if self._c is None:
            return self
        return G1Point._wrap((self._c[0], -self._c[1] % _P))

    def __sub__(self, other: "G1Point") -> "G1Point":
        return self + (-other)

    def __mul__(self, k) -> "G1Point":
        return G1Point._wrap(_g1_to_affine(_g1_mul(self._c, _scalar_int(k))))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, G1Point) and self._c == other._c

    def __hash__(self):
        return hash(("G1", None if self._c is None else (int(self._c[0]), int(self._c[1]))))

    def __repr__(self):
        if self._c is None:
            return "G1Point(identity)"
        return f"G1Point({int(self._c[0])}, {int(self._c[1])})"

    def to_bytes(self) -> bytes:
        if self._c is None:
            return bytes(BASE_BYTES) + b"\x02"
        x, y = self._c
        sign = b"\x01" if int(y) > _HALF_P else b"\x00"
        return int(x).to_bytes(BASE_BYTES, "little") + sign

    @classmethod
    def from_bytes(cls, data: bytes) -> "G1Point":
        if len(data) != BASE_BYTES + 1:
            raise UsageError(f"G1 encoding must be {BASE_BYTES + 1} bytes")
        flag = data[-1]
        if flag == 2:
            if any(data[:-1]):
                raise UsageError("malformed G1 identity encoding")
            return cls.identity()
        if flag > 1:
            raise UsageError("bad G1 sign byte")
        x = mpz(int.from_bytes(data[:-1], "little"))
        if x >= _P:
            raise UsageError("G1 x-coordinate out of range")
        rhs = (x * x * x + CURVE_B) % _P
        y = pow(rhs, _SQRT_EXP, _P)
        if y * y % _P != rhs:
            raise UsageError("G1 x-coordinate is not on the curve")
        if (int(y) > _HALF_P) != bool(flag):
            y = -y % _P
        return cls._wrap((x, y))


class G2Point:
    """Point in the order-r subgroup of the sextic twist over F_p2."""

    __slots__ = ("_c",)

    def __init__(self, x, y):
        x = (mpz(x[0]) % _P, mpz(x[1]) % _P)
        y = (mpz(y[0]) % _P, mpz(y[1]) % _P)
        if not _g2_on_curve(x, y):
            raise UsageError("point is not on the G2 twist curve")
        if not _g2_in_subgroup((x, y)):
            raise UsageError("G2 point is not in the order-r subgroup")
        object.__setattr__(self, "_c", (x, y))

    def __setattr__(self, name, value):
        raise AttributeError("G2Point is immutable")

    @classmethod
    def _wrap(cls, aff) -> "G2Point":
        pt = object.__new__(cls)
        object.__setattr__(pt, "_c", aff)
        return pt

    @classmethod
    def identity(cls) -> "G2Point":
        return cls._wrap(None)

    @classmethod
    def generator(cls) -> "G2Point":
        return cls._wrap(G2_GENERATOR)

    @property
    def is_identity(self) -> bool:
        return self._c is None

    @property
    def xy(self):
        if self._c is None:
            return None
        (x0, x1), (y0, y1) = self._c
        return ((int(x0), int(x1)), (int(y0), int(y1)))

    def __add__(self, other: "G2Point") -> "G2Point":
        if self._c is None:
            return other
        if other._c is None:
            return self
        res = _g2_add_affine((self._c[0], self._c[1], _F2_ONE), other._c)
        return G2Point._wrap(_g2_to_affine(res))

    def __neg__(self) -> "G2Point":
        if self._c is None:
            return self
        return G2Point._wrap((self._c[0], _f2_neg(self._c[1])))

    def __sub__(self, other: "G2Point") -> "G2Point":
        return self + (-other)

    def __mul__(self, k) -> "G2Point":
        return G2Point._wrap(_g2_to_affine(_g2_mul(self._c, _scalar_int(k))))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, G2Point) and self._c == other._c

    def __hash__(self):
        return hash(("G2", self.xy))

    def __repr__(self):
        if self._c is None:
            return "G2Point(identity)"
        return f"G2Point({self.xy})"

    def to_bytes(self) -> bytes:
        if self._c is None:
            return bytes(2 * BASE_BYTES) + b"\x02"
        (x0, x1), (y0, y1) = self._c
        larger = (int(y1), int(y0)) > (int(-y1 % _P), int(-y0 % _P))
        out = int(x0).to_bytes(BASE_BYTES, "little") + int(x1).to_bytes(BASE_BYTES, "little")
        return out + (b"\x01" if larger else b"\x00")

    @classmethod
    def from_bytes(cls, data: bytes) -> "G2Point":
        if len(data) != 2 * BASE_BYTES + 1:
            raise UsageError(f"G2 encoding must be {2 * BASE_BYTES + 1} bytes")
        flag = data[-1]
        if flag == 2:
            if any(data[:-1]):
                raise UsageError("malformed G2 identity encoding")
            return cls.identity()
        if flag > 1:
            raise UsageError("bad G2 sign byte")
        x0 = mpz(int.from_bytes(data[:BASE_BYTES], "little"))
        x1 = mpz(int.from_bytes(data[BASE_BYTES:-1], "little"))
        if x0 >= _P or x1 >= _P:
            raise UsageError("G2 x-coordinate out of range")
        x = (x0, x1)
        rhs = _f2_add(_f2_mul(_f2_sqr(x), x), TWIST_B)
        y = _f2_sqrt(rhs)
        if y is None:
            raise UsageError("G2 x-coordinate is not on the twist curve")
        larger = (int(y[1]), int(y[0])) > (int(-y[1] % _P), int(-y[0] % _P))
        if larger != bool(flag):
            y = _f2_neg(y)
        if not _g2_in_subgroup((x, y)):
            raise UsageError("G2 point is not in the order-r subgroup")
        return cls._wrap((x, y))


def group_op(point, arg, op: str):
    """Dispatch form of the group operations: add, scalar_mul, neg."""
    if op == "add":
        return point + arg
    if op == "scalar_mul":
        return point * arg
    if op == "neg":
        return -point
    raise UsageError(f"unknown group op {op!r}")
