"""Optimal-ate pairing kernel over BN254.

Port of the widely used go-bn256-style tower arithmetic. Internal layout
(kept verbatim from that lineage to preserve the audited formulas):

  fq2  = (a, b)       meaning a*i + b          (index 0 = i-coefficient!)
  fq6  = (x, y, z)    meaning x*v^2 + y*v + z  (v^3 = xi, xi = i + 9)
  fq12 = (x, y)       meaning x*w + y          (w^2 = v)

Twist points are (X, Y, Z, T) Jacobian tuples of fq2 values. The public
modules convert between this layout and the package's (c0, c1) convention
at the boundary. All coefficients are reduced mod p.
"""

from .params import BN_U, P, mpz

_P = P

# NAF-style encoding of 6u + 2 (LSB first), the optimal-ate loop count.
_ATE_LOOP_NAF = (
    0, 0, 0, 1, 0, 1, 0, -1, 0, 0, 1, -1, 0, 0, 1, 0,
    0, 1, 1, 0, -1, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 1,
    1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1,
    1, 0, 0, -1, 0, 0, 0, 1, 1, 0, -1, 0, 0, 1, 0, 1, 1,
)

# xi^((p-1)/6), xi^((p-1)/3), xi^((p-1)/2), xi^((2p-2)/3) as fq2 (i-coeff, const);
# xi^((p^2-1)/3), xi^((2p^2-2)/3), xi^((p^2-1)/6) are plain F_p scalars.
_XI_P_6 = (
    mpz(16469823323077808223889137241176536799009286646108169935659301613961712198316),
    mpz(8376118865763821496583973867626364092589906065868298776909617916018768340080),
)
_XI_P_3 = (
    mpz(10307601595873709700152284273816112264069230130616436755625194854815875713954),
    mpz(21575463638280843010398324269430826099269044274347216827212613867836435027261),
)
_XI_P_2 = (
    mpz(3505843767911556378687030309984248845540243509899259641013678093033130930403),
    mpz(2821565182194536844548159561693502659359617185244120367078079554186484126554),
)
_XI_2P_3 = (
    mpz(19937756971775647987995932169929341994314640652964949448313374472400716661030),
    mpz(2581911344467009335267311115468803099551665605076196740867805258568234346338),
)
_XI_P2_3 = mpz(21888242871839275220042445260109153167277707414472061641714758635765020556616)
_XI_2P2_3 = mpz(2203960485148121921418603742825762020974279258880205651966)
_XI_P2_6 = mpz(21888242871839275220042445260109153167277707414472061641714758635765020556617)

_FQ2_ZERO = (mpz(0), mpz(0))
_FQ2_ONE = (mpz(0), mpz(1))


def _f2_conj(a):
    return (-a[0] % _P, a[1])


def _f2_neg(a):
    return (-a[0] % _P, -a[1] % _P)


def _f2_add(a, b):
    return ((a[0] + b[0]) % _P, (a[1] + b[1]) % _P)


def _f2_sub(a, b):
    return ((a[0] - b[0]) % _P, (a[1] - b[1]) % _P)


def _f2_mul(a, b):
    # (a0*i + a1)(b0*i + b1) = (a0*b1 + b0*a1)*i + (a1*b1 - a0*b0)
    tx = (a[0] * b[1] + b[0] * a[1]) % _P
    ty = (a[1] * b[1] - a[0] * b[0]) % _P
    return (tx, ty)


def _f2_mul_scalar(a, k):
    return (a[0] * k % _P, a[1] * k % _P)


def _f2_mul_xi(a):
    # multiply by xi = i + 9: (9x + y)*i + (9y - x)
    return ((9 * a[0] + a[1]) % _P, (9 * a[1] - a[0]) % _P)


def _f2_square(a):
    x, y = a
    tx = (y - x) * (y + x) % _P
    ty = 2 * x * y % _P
    return (ty, tx)


def _f2_inv(a):
    x, y = a
    t = pow((x * x + y * y) % _P, _P - 2, _P)
    return (-x * t % _P, y * t % _P)


_FQ6_ZERO = (_FQ2_ZERO, _FQ2_ZERO, _FQ2_ZERO)
_FQ6_ONE = (_FQ2_ZERO, _FQ2_ZERO, _FQ2_ONE)


def _f6_neg(a):
    return (_f2_neg(a[0]), _f2_neg(a[1]), _f2_neg(a[2]))


def _f6_add(a, b):
    return (_f2_add(a[0], b[0]), _f2_add(a[1], b[1]), _f2_add(a[2], b[2]))


def _f6_sub(a, b):
    return (_f2_sub(a[0], b[0]), _f2_sub(a[1], b[1]), _f2_sub(a[2], b[2]))


def _f6_mul(a, b):
    v0 = _f2_mul(a[2], b[2])
    v1 = _f2_mul(a[1], b[1])
    v2 = _f2_mul(a[0], b[0])
    t0 = _f2_add(a[0], a[1])
    t1 = _f2_add(b[0], b[1])
    tz = _f2_mul(t0, t1)
    tz = _f2_sub(_f2_sub(tz, v1), v2)
    tz = _f2_add(_f2_mul_xi(tz), v0)
    t0 = _f2_add(a[1], a[2])
    t1 = _f2_add(b[1], b[2])
    ty = _f2_mul(t0, t1)
    ty = _f2_add(_f2_sub(_f2_sub(ty, v0), v1), _f2_mul_xi(v2))
    t0 = _f2_add(a[0], a[2])
    t1 = _f2_add(b[0], b[2])
    tx = _f2_mul(t0, t1)
    tx = _f2_sub(_f2_add(_f2_sub(tx, v0), v1), v2)
    return (tx, ty, tz)


def _f6_mul_fq2(a, b):
    return (_f2_mul(a[0], b), _f2_mul(a[1], b), _f2_mul(a[2], b))


def _f6_mul_fq(a, k):
    return (_f2_mul_scalar(a[0], k), _f2_mul_scalar(a[1], k), _f2_mul_scalar(a[2], k))


def _f6_mul_tau(a):
    # multiply by v: (x*v^2 + y*v + z)*v = xi*x + z*v^2 ... -> (y, z, xi*x)
    return (a[1], a[2], _f2_mul_xi(a[0]))


def _f6_square(a):
    v0 = _f2_square(a[2])
    v1 = _f2_square(a[1])
    v2 = _f2_square(a[0])
    c0 = _f2_square(_f2_add(a[0], a[1]))
    c0 = _f2_add(_f2_mul_xi(_f2_sub(_f2_sub(c0, v1), v2)), v0)
    c1 = _f2_square(_f2_add(a[1], a[2]))
    c1 = _f2_add(_f2_sub(_f2_sub(c1, v0), v1), _f2_mul_xi(v2))
    c2 = _f2_square(_f2_add(a[0], a[2]))
    c2 = _f2_sub(_f2_add(_f2_sub(c2, v0), v1), v2)
    return (c2, c1, c0)


def _f6_inv(a):
    XX = _f2_square(a[0])
    YY = _f2_square(a[1])
    ZZ = _f2_square(a[2])
    XY = _f2_mul(a[0], a[1])
    XZ = _f2_mul(a[0], a[2])
    YZ = _f2_mul(a[1], a[2])
    A = _f2_sub(ZZ, _f2_mul_xi(XY))
    B = _f2_sub(_f2_mul_xi(XX), YZ)
    C = _f2_sub(YY, XZ)
    F = _f2_mul_xi(_f2_mul(C, a[1]))
    F = _f2_add(F, _f2_mul(A, a[2]))
    F = _f2_add(F, _f2_mul_xi(_f2_mul(B, a[0])))
    F = _f2_inv(F)
    return (_f2_mul(C, F), _f2_mul(B, F), _f2_mul(A, F))


def _f6_frobenius(a):
    x = _f2_mul(_f2_conj(a[0]), _XI_2P_3)
    y = _f2_mul(_f2_conj(a[1]), _XI_P_3)
    return (x, y, _f2_conj(a[2]))


def _f6_frobenius_p2(a):
    return (
        _f2_mul_scalar(a[0], _XI_2P2_3),
        _f2_mul_scalar(a[1], _XI_P2_3),
        a[2],
    )


FQ12_ONE = (_FQ6_ZERO, _FQ6_ONE)


def f12_is_one(a):
    return a[0] == _FQ6_ZERO and a[1] == _FQ6_ONE


def f12_conj(a):
    return (_f6_neg(a[0]), a[1])


def f12_mul(a, b):
    tx = _f6_add(_f6_mul(a[0], b[1]), _f6_mul(a[1], b[0]))
    ty = _f6_add(_f6_mul(a[1], b[1]), _f6_mul_tau(_f6_mul(a[0], b[0])))
    return (tx, ty)


def f12_square(a):
    v0 = _f6_mul(a[0], a[1])
    t = _f6_add(a[1], _f6_mul_tau(a[0]))
    ty = _f6_mul(_f6_add(a[0], a[1]), t)
    ty = _f6_sub(_f6_sub(ty, v0), _f6_mul_tau(v0))
    return (_f6_add(v0, v0), ty)


def f12_inv(a):
    t1 = _f6_square(a[0])
    t2 = _f6_square(a[1])
    t1 = _f6_sub(t2, _f6_mul_tau(t1))
    t2 = _f6_inv(t1)
    return (_f6_mul(_f6_neg(a[0]), t2), _f6_mul(a[1], t2))


def f12_exp(a, e: int):
    if e < 0:
        return f12_exp(f12_inv(a), -e)
    out = FQ12_ONE
    for i in range(e.bit_length() - 1, -1, -1):
        out = f12_square(out)
        if (e >> i) & 1:
            out = f12_mul(out, a)
    return out


def _f12_frobenius(a):
    x = _f6_mul_fq2(_f6_frobenius(a[0]), _XI_P_6)
    return (x, _f6_frobenius(a[1]))


def _f12_frobenius_p2(a):
    x = _f6_mul_fq(_f6_frobenius_p2(a[0]), _XI_P2_6)
    return (x, _f6_frobenius_p2(a[1]))


# ---------------------------------------------------------------------------
# Line functions on the twist (points are (X, Y, Z, T) fq2 Jacobian tuples)
# ---------------------------------------------------------------------------


def _line_add(r, p, q, r2):
    B = _f2_mul(p[0], r[3])
    D = _f2_add(p[1], r[2])
    D = _f2_square(D)
    D = _f2_sub(_f2_sub(D, r2), r[3])
    D = _f2_mul(D, r[3])
    H = _f2_sub(B, r[0])
    I = _f2_square(H)
    E = _f2_add(I, I)
    E = _f2_add(E, E)
    J = _f2_mul(H, E)
    L1 = _f2_sub(D, r[1])
    L1 = _f2_sub(L1, r[1])
    V = _f2_mul(r[0], E)
    rx = _f2_square(L1)
    rx = _f2_sub(_f2_sub(rx, J), _f2_add(V, V))
    rz = _f2_add(r[2], H)
    rz = _f2_square(rz)
    rz = _f2_sub(_f2_sub(rz, r[3]), I)
    t = _f2_mul(_f2_sub(V, rx), L1)
    t2 = _f2_mul(r[1], J)
    t2 = _f2_add(t2, t2)
    ry = _f2_sub(t, t2)
    rt = _f2_square(rz)
    t = _f2_square(_f2_add(p[1], rz))
    t = _f2_sub(_f2_sub(t, r2), rt)
    t2 = _f2_mul(L1, p[0])
    t2 = _f2_add(t2, t2)
    a = _f2_sub(t2, t)
    c = _f2_mul_scalar(rz, q[1])
    c = _f2_add(c, c)
    b = _f2_mul_scalar(_f2_neg(L1), q[0])
    b = _f2_add(b, b)
    return a, b, c, (rx, ry, rz, rt)


def _line_double(r, q):
    A = _f2_square(r[0])
    B = _f2_square(r[1])
    C = _f2_square(B)
    D = _f2_square(_f2_add(r[0], B))
    D = _f2_sub(_f2_sub(D, A), C)
    D = _f2_add(D, D)
    E = _f2_add(_f2_add(A, A), A)
    F = _f2_square(E)
    C8 = _f2_add(C, C)
    C8 = _f2_add(C8, C8)
    C8 = _f2_add(C8, C8)
    rx = _f2_sub(F, _f2_add(D, D))
    ry = _f2_sub(_f2_mul(E, _f2_sub(D, rx)), C8)
    rz = _f2_square(_f2_add(r[1], r[2]))
    rz = _f2_sub(_f2_sub(rz, B), r[3])
    a = _f2_square(_f2_add(r[0], E))
    B4 = _f2_add(B, B)
    B4 = _f2_add(B4, B4)
    a = _f2_sub(a, _f2_add(A, _f2_add(F, B4)))
    t = _f2_mul(E, r[3])
    t = _f2_add(t, t)
    b = _f2_mul_scalar(_f2_neg(t), q[0])
    c = _f2_mul(rz, r[3])
    c = _f2_add(c, c)
    c = _f2_mul_scalar(c, q[1])
    rt = _f2_square(rz)
    return a, b, c, (rx, ry, rz, rt)


def _line_mul(ret, a, b, c):
    a2 = (_FQ2_ZERO, a, b)
    a2 = _f6_mul(a2, ret[0])
    t3 = _f6_mul_fq2(ret[1], c)
    t = _f2_add(b, c)
    t2 = (_FQ2_ZERO, a, t)
    rx = _f6_add(ret[0], ret[1])
    ry = t3
    rx = _f6_sub(_f6_mul(rx, t2), a2)
    rx = _f6_sub(rx, ry)
    ry = _f6_add(ry, _f6_mul_tau(a2))
    return (rx, ry)


def _twist_neg(pt):
    return (pt[0], _f2_neg(pt[1]), pt[2], _FQ2_ZERO)


def _miller(q_aff, p_aff):
    """Miller loop; q_aff = (x, y) fq2 pair, p_aff = (x, y) ints."""
    ret = FQ12_ONE
    a_affine = (q_aff[0], q_aff[1], _FQ2_ONE, _FQ2_ONE)
    b_affine = p_aff
    minus_a = _twist_neg(a_affine)
    r = a_affine
    r2 = _f2_square(a_affine[1])
    n = len(_ATE_LOOP_NAF)
    for i in range(n - 1, 0, -1):
        a, b, c, r = _line_double(r, b_affine)
        if i != n - 1:
            ret = f12_square(ret)
        ret = _line_mul(ret, a, b, c)
        s = _ATE_LOOP_NAF[i - 1]
        if s == 1:
            a, b, c, r = _line_add(r, a_affine, b_affine, r2)
        elif s == -1:
            a, b, c, r = _line_add(r, minus_a, b_affine, r2)
        else:
            continue
        ret = _line_mul(ret, a, b, c)

    # Frobenius twists of Q for the final two addition steps
    q1 = (
        _f2_mul(_f2_conj(a_affine[0]), _XI_P_3),
        _f2_mul(_f2_conj(a_affine[1]), _XI_P_2),
        _FQ2_ONE,
        _FQ2_ONE,
    )
    minus_q2 = (
        _f2_mul_scalar(a_affine[0], _XI_P2_3),
        a_affine[1],
        _FQ2_ONE,
        _FQ2_ONE,
    )
    r2 = _f2_square(q1[1])
    a, b, c, r = _line_add(r, q1, b_affine, r2)
    ret = _line_mul(ret, a, b, c)
    r2 = _f2_square(minus_q2[1])
    a, b, c, r = _line_add(r, minus_q2, b_affine, r2)
    ret = _line_mul(ret, a, b, c)
    return ret


def _final_exponentiation(a):
    t1 = f12_conj(a)
    inv = f12_inv(a)
    t1 = f12_mul(t1, inv)
    t2 = _f12_frobenius_p2(t1)
    t1 = f12_mul(t1, t2)
    fp = _f12_frobenius(t1)
    fp2 = _f12_frobenius_p2(t1)
    fp3 = _f12_frobenius(fp2)
    fu = f12_exp(t1, BN_U)
    fu2 = f12_exp(fu, BN_U)
    fu3 = f12_exp(fu2, BN_U)
    y3 = _f12_frobenius(fu)
    fu2p = _f12_frobenius(fu2)
    fu3p = _f12_frobenius(fu3)
    y2 = _f12_frobenius_p2(fu2)
    y0 = f12_mul(f12_mul(fp, fp2), fp3)
    y1 = f12_conj(t1)
    y5 = f12_conj(fu2)
    y3 = f12_conj(y3)
    y4 = f12_conj(f12_mul(fu, fu2p))
    y6 = f12_conj(f12_mul(fu3, fu3p))
    t0 = f12_mul(f12_mul(f12_square(y6), y4), y5)
    t1 = f12_mul(f12_mul(y3, y5), t0)
    t0 = f12_mul(t0, y2)
    t1 = f12_mul(f12_square(t1), t0)
    t1 = f12_square(t1)
    t0 = f12_mul(t1, y1)
    t1 = f12_mul(t1, y0)
    t0 = f12_square(t0)
    return f12_mul(t0, t1)


def ate_pairing(p_aff, q_aff_kernel):
    """Full pairing (Miller loop + final exponentiation).

    p_aff: (x, y) ints on the G1 curve; q_aff_kernel: ((xi, xc), (yi, yc))
    twist point in kernel fq2 layout. Identities handled by the caller.
    """
    return _final_exponentiation(_miller(q_aff_kernel, p_aff))
