"""Pinned parameters of the BN254 (alt_bn128) pairing-friendly curve.

Every constant used by the field, group, FFT and pairing code lives here.
The curve is y^2 = x^3 + 3 over F_p; G2 lives on the sextic twist
y^2 = x^3 + 3/xi over F_p2 = F_p[i]/(i^2 + 1) with xi = 9 + i.
Quadratic-extension values are (c0, c1) pairs meaning c0 + c1*i.
"""

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def mpz(x):
        return x

# Base field modulus p and scalar field modulus r; both prime.
# p = 36u^4 + 36u^3 + 24u^2 + 6u + 1, r = 36u^4 + 36u^3 + 18u^2 + 6u + 1.
BN_U = 4965661367192848881
P = mpz(21888242871839275222246405745257275088696311157297823662689037894645226208583)
R = mpz(21888242871839275222246405745257275088548364400416034343698204186575808495617)

SCALAR_BITS = 254
SCALAR_BYTES = 32
BASE_BYTES = 32

# r - 1 = 2^28 * odd: FFT domains up to 2^28 exist; we rely on >= 2^20.
TWO_ADICITY = 28
# 5 generates the full multiplicative group of the scalar field.
MULTIPLICATIVE_GENERATOR = 5

CURVE_B = mpz(3)
G1_GENERATOR = (mpz(1), mpz(2))

# Twist coefficient b' = 3/xi and the standard G2 generator, (c0, c1) order.
TWIST_B = (
    mpz(19485874751759354771024239261021720505790618469301721065564631296452457478373),
    mpz(266929791119991161246907387137283842545076965332900288569378510910307636690),
)
G2_GENERATOR = (
    (
        mpz(10857046999023057135944570762232829481370756359578518086990519993285655852781),
        mpz(11559732032986387107991004021392285783925812861821192530917403151452391805634),
    ),
    (
        mpz(8495653923123431417604973247489272438418190587263600148770280649306958101930),
        mpz(4082367875863433681332203403145435568316851327593401208105741076214120093531),
    ),
)

# Order of the twist curve group divided by r (G2 cofactor); G1 cofactor is 1.
G2_COFACTOR = 21888242871839275222246405745257275088844257914179612981679871602714643921549

# GLV endomorphism data. G1: phi(x, y) = (BETA*x, y) acts as LAMBDA_G1;
# G2: psi = twist-Frobenius acts as LAMBDA_G2 = 6u^2 = p mod r. The short
# lattice bases come from Lagrange-Gauss reduction of {(a,b): a + b*lam = 0
# mod r}; decomposed halves stay under 127 bits (verified by tests).
GLV_BETA = mpz(21888242871839275220042445260109153167277707414472061641714758635765020556616)
GLV_LAMBDA_G1 = 21888242871839275217838484774961031246154997185409878258781734729429964517155
GLV_BASIS_G1 = (
    (147946756881789319000765030803803410728, -9931322734385697763),
    (9931322734385697763, 147946756881789319010696353538189108491),
)
GLV_LAMBDA_G2 = 6 * BN_U * BN_U
GLV_BASIS_G2 = (
    (-147946756881789318990833708069417712966, 1),
    (29793968203157093287, 147946756881789319020627676272574806255),
)
# psi coefficients in (c0, c1) layout: xi^((p-1)/3) and xi^((p-1)/2)
PSI_X_COEFF = (
    mpz(21575463638280843010398324269430826099269044274347216827212613867836435027261),
    mpz(10307601595873709700152284273816112264069230130616436755625194854815875713954),
)
PSI_Y_COEFF = (
    mpz(2821565182194536844548159561693502659359617185244120367078079554186484126554),
    mpz(3505843767911556378687030309984248845540243509899259641013678093033130930403),
)


def params_text() -> str:
    """Human-readable dump of the pinned parameters (`zkrb params`)."""
    lines = [
        "curve: BN254 (alt_bn128)",
        f"base field p  = {int(P)}",
        f"scalar field r = {int(R)}",
        f"bn parameter u = {BN_U}",
        f"curve: y^2 = x^3 + {int(CURVE_B)} over F_p",
        "twist: y^2 = x^3 + 3/xi over F_p2, xi = 9 + i",
        f"g1 generator = {tuple(map(int, G1_GENERATOR))}",
        f"g2 generator x = {tuple(map(int, G2_GENERATOR[0]))}",
        f"g2 generator y = {tuple(map(int, G2_GENERATOR[1]))}",
        f"two-adicity of r-1 = {TWO_ADICITY}",
        f"multiplicative generator of F_r = {MULTIPLICATIVE_GENERATOR}",
        f"g2 cofactor = {G2_COFACTOR}",
        "serialization: scalars 32-byte little-endian; points compressed x + 1 sign byte",
    ]
    return "\n".join(lines)
