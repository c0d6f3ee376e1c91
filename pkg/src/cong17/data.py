"""Transcribed constants: curves, genus-2 data, Klein invariants, maps, tables and appendix polynomials.

Every constant is written once here, in the notation it was typeset in, and
parsed by the modules that use it.  ``fingerprints()`` runs cheap structural
checks (leading terms, degrees, shapes, exact table identities) so that a
transcription error is caught before any verification command runs.
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# elliptic curves [a1, a2, a3, a4, a6]
# ---------------------------------------------------------------------------

CURVES = {
    # symplectic pair
    "E1": (1, -1, 0, -128973503459, 17827877649739965),
    "E2": (1, -1, 0, -184201215542543714, -34187608332483214491862380),
    # anti-symplectic pair
    "E1p": (1, 0, 0, -8, 27),
    "E2p": (1, 0, 0, 8124402, -11887136703),
}

PAIRS = {
    "prime17-symplectic": ("E1", "E2"),
    "prime17-antisymplectic": ("E1p", "E2p"),
}

CONDUCTORS = {"E1": 279809270, "E2": 3077901970, "E1p": 3675, "E2p": 47775}

# (sign, {prime: exponent}) of the minimal discriminant
DISCRIMINANTS = {
    "E1": (1, {2: 3, 5: 3, 13: 1, 59: 2, 191: 3}),
    "E2": (-1, {2: 14, 5: 11, 11: 17, 13: 1, 59: 1, 191: 9}),
    "E1p": (-1, {3: 5, 5: 2, 7: 2}),
    "E2p": (-1, {3: 2, 5: 2, 7: 2, 13: 17}),
}

TRACE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
TRACES = {
    "E1": (-1, 0, 1, -1, -5, 1, 2, 4, -1, -3, -2, -11, 5, -4, -9),
    "E2": (-1, 0, 1, -1, 1, 1, 2, 4, -1, -3, -2, 6, -12, -4, -9),
    "E1p": (-1, 1, 0, 0, 0, -3, 2, -1, -2, -8, 8, -7, 0, 8, -10),
    "E2p": (-1, 1, 0, 0, 0, 1, 2, -1, -2, 9, -9, 10, 0, 8, 7),
}

STURM_BOUND_ANTISYMPLECTIC = 15680

# ---------------------------------------------------------------------------
# genus 2 curve y^2 = f1(x) f2(x) and its degree-17 maps mod 101
# ---------------------------------------------------------------------------

GENUS2_F1 = "196081931 x^3 + 1143338037 x^2 - 801791940 x + 135616700"
GENUS2_F2 = "-25996 x^3 + 1698260 x^2 - 6845267 x + 3822078"

MORPHISM_P = 101
MORPHISM_G = {
    1: "25 x^7 + 56 x^6 + 31 x^5 + 99 x^4 + 100 x^3 + 42 x^2 + 79 x + 5",
    2: "3 x^7 + 76 x^6 + 44 x^5 + 97 x^4 + 52 x^3 + 38 x^2 + 75 x + 2",
}
MORPHISM_H = {
    1: "16 x^{17} + 6 x^{16} + 57 x^{15} + 54 x^{14} + 94 x^{13} + 79 x^{12} + 77 x^{11} + 55 x^{10}"
    " + 74 x^9 + 78 x^8 + 97 x^7 + 79 x^6 + 25 x^5 + 96 x^4 + 98 x^3 + 46 x^2 + 4 x + 99",
    2: "67 x^{17} + 25 x^{16} + x^{15} + 22 x^{14} + 84 x^{13} + 94 x^{12} + 93 x^{11} + 95 x^{10}"
    " + 34 x^9 + 40 x^8 + 99 x^7 + 84 x^6 + 43 x^5 + 12 x^4 + 59 x^3 + 13 x^2 + 26 x + 98",
}
# pull-back of dx/(2y + x) is (c x + d) dx / y
MORPHISM_DIFF = {1: (273857, -336364), 2: (2758, 1630)}

# ---------------------------------------------------------------------------
# Klein's invariants for X(17) in P^8
# ---------------------------------------------------------------------------

# subscripts k of xi_k in rows 1..8, columns 1..8 of the sqrt(17) M2 matrix
M2_XI_ROWS = (
    (3, 8, 7, 4, 5, 2, 6, 1),
    (8, 7, 4, 5, 2, 6, 1, 3),
    (7, 4, 5, 2, 6, 1, 3, 8),
    (4, 5, 2, 6, 1, 3, 8, 7),
    (5, 2, 6, 1, 3, 8, 7, 4),
    (2, 6, 1, 3, 8, 7, 4, 5),
    (6, 1, 3, 8, 7, 4, 5, 2),
    (1, 3, 8, 7, 4, 5, 2, 6),
)
M17_EXPONENTS = (0, 1, 9, 13, 15, 16, 8, 4, 2)

KLEIN_Q = "x_0^2 + x_1 x_5 + x_2 x_6 + x_3 x_7 + x_4 x_8"
KLEIN_D = (
    "2 x_0 (x_1 x_5 - x_2 x_6 + x_3 x_7 - x_4 x_8)"
    " - x_1^2 x_4 + x_2^2 x_5 - x_3^2 x_6 + x_4^2 x_7 - x_5^2 x_8 + x_6^2 x_1 - x_7^2 x_2 + x_8^2 x_3"
)
KLEIN_F = (
    "x_0^4 + x_0 (x_1^2 x_4 + x_2^2 x_5 + x_3^2 x_6 + x_4^2 x_7 + x_5^2 x_8 + x_1 x_6^2 + x_2 x_7^2 + x_3 x_8^2)"
    " + x_1 x_3 x_5 x_7 + x_2 x_4 x_6 x_8 + x_1 x_2 x_5 x_6 + x_2 x_3 x_6 x_7 + x_3 x_4 x_7 x_8 + x_1 x_4 x_5 x_8"
    " + x_1^2 x_3 x_8 + x_1 x_2^2 x_4 + x_2 x_3^2 x_5 + x_3 x_4^2 x_6 + x_4 x_5^2 x_7 + x_5 x_6^2 x_8"
    " + x_1 x_6 x_7^2 + x_2 x_7 x_8^2"
)
# quartics vanishing on the A-curve component
A_CURVE_QUARTICS = ("x_0^4 + x_1 x_3 x_5 x_7", "x_0^4 + x_2 x_4 x_6 x_8")

# maps from Klein's z-curve in P^7 to P^8 (coordinates x_0 .. x_8)
PHI1 = ("1", "z_2/z_1", "z_6/z_3", "-z_1/z_8", "-z_3/z_7", "z_8/z_4", "-z_7/z_5", "z_4/z_2", "-z_5/z_6")
PHI2 = (
    "z_1 z_4 + z_2 z_8 + z_3 z_5 - z_6 z_7 - 2 z_4 z_7 z_2/z_1",
    "-z_8^2 - 2 z_5 z_7 z_2/z_1",
    "z_7^2 - 2 z_2 z_4 z_6/z_3",
    "-z_4^2 + 2 z_5 z_6 z_1/z_8",
    "z_5^2 + 2 z_1 z_2 z_3/z_7",
    "-z_2^2 + 2 z_3 z_6 z_8/z_4",
    "z_6^2 - 2 z_1 z_8 z_7/z_5",
    "-z_1^2 - 2 z_3 z_7 z_4/z_2",
    "z_3^2 + 2 z_4 z_8 z_5/z_6",
)

# a point above j = 1728; u lives in Q(i, theta), theta^4 = 1 - 4i, sigma(theta) = i theta
SPECIAL_U = "(h^3 - h^2 - h + 2 i - 1)/4"  # h stands for theta
J_SCALE = -(2**7)  # j = J_SCALE c4^3 / D^10
SPECIAL_RATIO = (-1728, 2**7)  # c4^3 / D^10 at the special point

# ---------------------------------------------------------------------------
# bi-invariants
# ---------------------------------------------------------------------------

# symmetric case: rows give B'_i in terms of B_i
SYMMETRIC_CHANGE_OF_BASIS = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (-24, -12, 28, 8, -4, 0, 4, 4, 0, -4, 4, 0, 0, 0),
    (-34, -15, 34, 7, -8, -3, 0, 5, -2, -9, 7, 0, -1, 0),
    (-480, -288, 320, 160, -64, -32, 192, 160, 0, -96, 96, 512, -96, 0),
    (248, 144, -96, -144, 0, -16, -192, -144, -32, 48, 16, 448, -48, 16),
    (-24, -56, -128, -40, 0, -24, 32, 56, -16, -24, -8, -32, -40, 8),
    (-384, -144, 688, 96, -64, 0, 32, -48, -16, 0, 128, -64, 0, 8),
    (328, 204, -240, -76, 32, 4, -144, -92, 8, 36, -20, 24, 20, -12),
    (-366, -180, 96, 72, -48, 12, 192, 168, -12, -48, -84, 36, 0, 36),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)
SYMMETRIC_FIXED_SLOTS = (1, 2, 3, 12, 13, 14)

# skew case: rows give B'_i in terms of B_i
SKEW_CHANGE_OF_BASIS = (
    (-4, -12, 8, -4, -8, -8, 0, -4, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0),
    (-56, -176, 148, -68, -160, -140, 36, -52, 24, 24, -8, 4),
    (-104, -240, 156, -76, -128, -164, 12, -92, 8, 8, 8, 4),
    (-16, -128, 124, -36, -144, -92, 12, -36, 8, 8, 8, 12),
    (-40, -48, 48, -24, -32, -40, 48, -24, 32, 32, 0, 16),
    (-64, -176, 132, -60, -128, -148, 4, -76, -8, -8, 24, -12),
    (-36, -72, 96, -96, 12, 24, -36, -12, 0, 24, 24, -12),
    (-60, -48, 48, -24, -12, -48, 60, -60, 48, 48, 72, 24),
    (36, 72, -72, 24, 60, 24, -60, 12, -72, -72, 24, -48),
    (-72, -84, 108, -48, 0, 24, -12, -24, 12, 24, 0, 12),
    (-208, 204, -72, 28, 364, 116, 288, -44, 208, 224, 32, 104),
)

# skew bi-invariants: (outside part, part summed over the 8 simultaneous cyclic shifts
# x_i -> x_{i+1}, y_i -> y_{i+1} of the indices 1..8)
SKEW_A2 = (
    "4 x_0^2 y_0^2",
    "2 x_0 x_1 y_3 y_4 + 2 x_4 x_5 y_0 y_1 + x_1^2 y_1 y_7 + x_2 x_8 y_1^2 + x_1 x_2 y_2 y_5"
    " + x_3 x_6 y_1 y_2 + x_1 x_3 y_5 y_8 + x_1 x_6 y_1 y_3 + 1/2 (x_1 x_5 y_2 y_6 + x_3 x_7 y_1 y_5)",
)
SKEW_A3 = (
    "4 x_0^2 y_0^2",
    "2 x_0 x_1 y_2 y_8 + 2 x_1 x_3 y_0 y_1 + x_1^2 y_2 y_3 + x_3 x_4 y_1^2 + x_1 x_2 y_2 y_5"
    " + x_3 x_6 y_1 y_2 + x_1 x_3 y_5 y_8 + x_1 x_6 y_1 y_3 + 1/2 (x_1 x_5 y_1 y_5 + x_2 x_6 y_1 y_5)",
)
SKEW_S31 = (
    "-16 x_0^3 y_0",
    "(3 x_0 x_1 x_5 + 3 x_1^2 x_4) y_0 + (6 x_0 x_1 x_3 + 6 x_0 x_4 x_5 + 3 x_2^2 x_3 + 3 x_1 x_4^2 + x_5^3"
    " + 3 x_4 x_6^2 + 6 x_1 x_2 x_7 + 6 x_3 x_5 x_8 + 6 x_6 x_7 x_8) y_1",
)

# ---------------------------------------------------------------------------
# the K3 fibration and the genus-one fibres used for the birational maps
# ---------------------------------------------------------------------------

WEIERSTRASS = "y^2 + (T + 1)(T - 2) x y + T^3 y - (x^3 - x^2)"

BIRATIONAL_MAPS = {
    1: {
        "z_quadrics": (
            "2 T z_1^2 + 3 T z_1 z_2 - (5 T - 2) z_1 z_3 - 3 T^2 z_1 z_4 + T z_2^2 - 4 T z_2 z_3 - 2 T^2 z_2 z_4"
            " + 2 (2 T - 1) z_3^2 + T (4 T - 1) z_3 z_4 + T^3 z_4^2",
            "(T + 1)^2 z_1^2 + T (2 T + 1) z_1 z_2 - (T + 1)^2 z_1 z_3 - T (T + 1)^2 z_1 z_4 + T^2 z_2^2"
            " - 2 T^2 z_2 z_3 - T^3 z_2 z_4",
        ),
        "z_to_u": (
            "T (T + 1) z_1",
            "T (z_1 + z_2 - 2 z_3 - T z_4)",
            "(T + 1) z_3",
            "T (-z_1 + 2 z_3 + T z_4)",
        ),
        "u_quadrics": (
            "u_1 u_2 + u_1 u_3 + (T + 1) u_2^2 - u_3 u_4",
            "u_1 u_4 + T u_2^2 - T^2 u_2 u_4 - T u_3 u_4",
        ),
        "x": ("-T u_1", "u_4"),
        "y": ("T u_1 (u_1 - u_2 - u_4)", "u_2 u_4"),
    },
    3: {
        "z_quadrics": (
            "z_1^2 - T z_1 z_2 + T z_1 z_3 + T z_2 z_3 - T z_3^2 + T z_3 z_4",
            "z_1 z_3 - T z_2 z_3 + 2 (T + 1) z_1 z_4 - (T^2 - 1) z_2 z_4 + (T + 1) z_4^2",
        ),
        "z_to_u": (
            "z_1 - T z_2",
            "(T + 2) z_1 + z_2 - (T + 1)(z_3 - z_4)",
            "(T + 1) z_3",
            "(T + 1) z_4",
        ),
        "u_quadrics": (
            "u_1^2 + T u_1 u_2 + T u_2 u_3 - T u_1 u_4",
            "u_1 u_3 + T u_1 u_4 + u_2 u_4 + u_3 u_4",
        ),
        "x": ("T (u_1 + T u_2)", "u_4"),
        "y": ("T (u_1 + T u_2)^2", "u_1 u_4"),
    },
}

# ---------------------------------------------------------------------------
# double covers z^2 = F_k(T, x, y)
# ---------------------------------------------------------------------------

F1 = r"""
x^{10} - 2 T (T - 1) x^8 y + T (T^3 - 2 T^2 - 11 T + 4) x^9
 - T^2 (T^4 - 3 T^3 - 3 T^2 + 3 T - 10) x^7 y + T^2 (8 T^4 + 58 T^3
   + 15 T^2 - 64 T + 5) x^8 - T^3 (8 T^5 + 51 T^4 + 80 T^3 + 51 T^2 -
   2 T - 20) x^6 y - 2 T^4 (16 T^4 - 41 T^3 - 205 T^2 - 97 T + 71) x^7
   + 2 T^4 (16 T^6 + 49 T^5 - 13 T^4 - 142 T^3 - 113 T^2 - T +
   10) x^5 y - T^4 (149 T^6 + 576 T^5 + 180 T^4 - 956 T^3 - 579 T^2 +
   148 T + 5) x^6 - 2 T^5 (13 T^7 - 39 T^6 - 229 T^5 - 202 T^4 +
   126 T^3 + 169 T^2 + 9 T - 5) x^4 y + T^5 (80 T^8 + 318 T^7 -
   192 T^6 - 1800 T^5 - 1376 T^4 + 819 T^3 + 750 T^2 - 67 T - 4) x^5 -
   T^6 (T + 1) (24 T^7 + 156 T^6 - 24 T^5 - 558 T^4 - 285 T^3 +
   192 T^2 + 21 T - 2) x^3 y - T^6 (16 T^{10} + 72 T^9 - 239 T^8 -
   1300 T^7 - 870 T^6 + 1952 T^5 + 2295 T^4 + 18 T^3 - 449 T^2 + 4 T +
   1) x^4 + T^8 (T + 1)^2 (12 T^6 - 50 T^5 - 226 T^4 + 36 T^3 +
   292 T^2 - 31 T - 6) x^2 y - T^8 (T + 1) (76 T^8 + 273 T^7 - 275 T^6
   - 1505 T^5 - 631 T^4 + 1016 T^3 + 472 T^2 - 94 T - 4) x^3 - T^{10} (T
   + 1)^3 (T^5 - 14 T^4 + 55 T^3 + 118 T^2 - 68 T - 4) x y - T^{10} (T +
   1)^2 (131 T^6 + 328 T^5 - 234 T^4 - 700 T^3 - 18 T^2 + 138 T +
   3) x^2 - T^{13} (T + 1)^4 (T^2 - 2 T + 28) y - 2 T^{13} (T +
   1)^3 (49 T^3 + 63 T^2 - 63 T - 27) x - 27 T^{16} (T + 1)^4
"""

F3 = r"""
x^{10} - 14 T x^8 y - T (4 T^2 - 71 T - 16) x^9 +
   T^2 (17 T^2 - 89 T - 18) x^7 y - T^2 (14 T^4 + 288 T^3 + 165 T^2 -
   220 T - 19) x^8 + T^3 (76 T^4 + 480 T^3 + 545 T^2 - 176 T -
   4) x^6 y + T^3 (94 T^6 + 513 T^5 + 234 T^4 - 1412 T^3 - 732 T^2 +
   242 T + 4) x^7 - T^5 (163 T^5 + 837 T^4 + 1320 T^3 - 72 T^2 - 898 T
   + 106) x^5 y - T^5 (159 T^7 + 590 T^6 - 103 T^5 - 3276 T^4 -
   3150 T^3 + 1326 T^2 + 820 T - 112) x^6 + T^6 (80 T^7 + 418 T^6 +
   501 T^5 - 936 T^4 - 2496 T^3 - 948 T^2 + 390 T - 4) x^4 y +
   T^6 (98 T^9 + 386 T^8 - 350 T^7 - 3439 T^6 - 3894 T^5 + 3010 T^4 +
   4872 T^3 - 306 T^2 - 284 T + 4) x^5 + T^8 (4 T^8 + 130 T^7 +
   917 T^6 + 2787 T^5 + 4078 T^4 + 2292 T^3 - 482 T^2 - 480 T -
   60) x^3 y - T^8 (27 T^{10} + 122 T^9 - 177 T^8 - 1496 T^7 - 987 T^6 +
   5032 T^5 + 8446 T^4 + 1124 T^3 - 2621 T^2 + 54 T - 61) x^4 -
   T^{10} (10 T^9 + 132 T^8 + 738 T^7 + 2126 T^6 + 3179 T^5 + 1902 T^4 -
   718 T^3 - 1376 T^2 - 482 T - 256) x^2 y + T^{10} (T^{10} - 48 T^9
   - 122 T^8 + 882 T^7 + 4304 T^6 + 6244 T^5 + 973 T^4 - 4506 T^3 -
  1714 T^2 + 428 T - 242) x^3 - T^{12} (T^{10} - T^9 - 70 T^8 -
  368 T^7 - 814 T^6 - 714 T^5 + 237 T^4 + 963 T^3 + 800 T^2 + 522
  T + 312) x y - T^{12} (26 T^9 + 283 T^8 + 1018 T^7 + 1256 T^6 - 810
  T^5 - 3237 T^4 - 1848 T^3 + 648 T^2 + 108 T - 265) x^2 - T^{14}
  (T + 2) (T^8 + 12 T^7 + 44 T^6 + 74 T^5 + 64 T^4 + 20 T^3 - 43
  T^2 - 92 T - 60) y - 2 T^{14} (10 T^8 + 94 T^7 + 323 T^6 + 471
  T^5 + 129 T^4 - 367 T^3 - 263 T^2 + 69 T + 36) x + T^{16} (T^8 + 4
  T^7 - 8 T^6 - 66 T^5 - 120 T^4 - 56 T^3 + 53 T^2 + 36 T - 16)
"""

DOUBLE_COVERS = {1: F1, 3: F3}

# ---------------------------------------------------------------------------
# copies of X_0(m): arguments of F_k as series in e (epsilon) over Q(t)
# ---------------------------------------------------------------------------

# m: (k, T, x, y prefix, absolute precision of the y prefix, leading coefficient, exponent)
TABLE1_SERIES = {
    2: (1, "-2 + e", "-4 + 8 e - 5 e^2 + e^3 + t e^4", "4", 1, "2^{18} (8 t + 1)", 4),
    3: (3, "-1/2 + e", "1/2 - e + t e^3", "1/4", 2, "-2^{-20} (27 t - 16)", 4),
    4: (1, "1 + e", "- t e^2", "-1", 1, "2^4 (32 t + 1)", 2),
    5: (3, "-2 + e", "2 - e + t e^2", "2", 1, "-2^{12} 3^4 (t^2 - 11 t - 1)", 4),
    6: (3, "-1 + e", "1 - 2 e + t e^2", "2 e", 2, "t^2 - 36 t + 36", 10),
    7: (3, "t e^{-2}", "t e^{-3}", "e^{-2}", -1, "t^{22} (t + 1) (t - 27)", -48),
    8: (1, "e", "e^2 + e^3 + 8 t e^4", "e^2 + 2 e^3", 4, "2^4 (t^2 + 6 t + 1)", 18),
    9: (1, "e^{-1}", "e^{-3} + t e^{-1}", "0", -4, "t^2 + 20 t - 8", -24),
    10: (3, "(t + 1) e^2", "t^{-1} (t + 1)^3 e^4", "t^{-1} (t + 1)^3 (e^4 + e^5)", 6,
         "t^{-4} (t + 1)^{16} (t^2 + 18 t + 1)", 32),
    11: (3, "e^2 - e^3", "e^3 + e^4 + (t - 1) e^5", "e^3 + 2 e^4", 5, "t (t^3 + 20 t^2 + 56 t + 44)", 36),
    12: (3, "e^{-1}", "-e^{-1} - (t + 1)", "t e^{-2}", -1, "t^2 - 14 t + 1", -24),
    13: (1, "-t e^{-1}", "(t + 1) e^{-1}", "t^{-2} (t + 1)^3", 1, "t^{16} (t^2 + 12 t - 16)", -20),
    14: (3, "e^{-1}", "-t e^{-3}", "t e^{-5}", -4, "t^2 (t + 1)^4 (t^4 - 14 t^3 + 19 t^2 - 14 t + 1)", -30),
    15: (1, "e^{-1}", "t e^{-2}", "-t e^{-4}", -3, "t^2 (t - 1)^2 (t^2 - t - 1) (t^2 + 11 t - 1)", -24),
    16: (1, "-1 + e", "t e", "1", 1, "t^2 - 12 t + 4", 4),
    19: (1, "-1 + 2 e", "(t + 4) e", "(t + 4)^2 e^2", 3, "-8 (t + 3) (t^3 - 2 t + 2)", 4),
    20: (3, "-e + t^2 e^2", "e - t e^2", "e - e^2", 3, "t^4 + 8 t^3 - 2 t^2 + 8 t + 1", 12),
    21: (1, "-e", "t (t + 1) e^3", "(t + 1)^2 e^3", 4, "t^4 + 6 t^3 - 17 t^2 + 6 t + 1", 16),
}

# m: (k, T, x, y, value of F_k) as exact polynomials in t
TABLE1_EXACT = {
    18: (1, "t", "-t", "-t (t + 1)", "t^{16} (t + 1)^2 (t^2 + 10 t + 1)"),
    24: (3, "t", "1", "0", "(t + 1)^8 (t^3 + t^2 - 1)^4 (t^4 - 8 t^3 + 2 t^2 + 8 t + 1)"),
    25: (1, "t", "t^2", "t^2", "-t^{18} (t + 1)^4 (16 t^2 + 4 t - 1)"),
    27: (3, "t", "t^2 (t + 1)", "t^2 (t + 1)^2", "-t^{18} (t^2 + 2 t + 2)^4 (t - 1) (11 t^3 + 15 t^2 + 9 t + 1)"),
    32: (1, "t", "t^2 (t + 1)", "-t^2 (t^3 + t^2 - 1)",
         "t^{16} (t + 1)^4 (t^2 + t + 1)^4 (t^4 + 8 t^3 + 12 t^2 + 16 t + 4)"),
    36: (1, "t", "(t + 1) (t^2 + t + 1)", "(t + 1)^2 (t^2 + 2 t + 2)",
         "(t + 1)^4 (t^3 + t^2 + 2 t + 1)^2 (t^3 + 2 t^2 + 3 t + 1)^4 (4 t^4 + 8 t^3 + 12 t^2 + 8 t + 1)"),
    49: (1, "t", "t (t^2 - 1)", "-t (t^2 - 1)^2", "t^{20} (t + 1)^4 (t^2 - t - 1)^2 (t^4 + 6 t^3 + 3 t^2 - 18 t - 19)"),
}

# ---------------------------------------------------------------------------
# rational points and the curves conjecturally carrying all others
# ---------------------------------------------------------------------------

# (k, T, x, y, curve labels, isogeny degree or None)
TABLE2 = (
    (1, "1/3", "-2/75", "-11/125", ("279809270*", "3077901970*"), None),
    (1, "-3", "-27", "108", ("1849a1", "1849a2"), 43),
    (1, "-5/6", "-5/24", "5/16", ("4489a1", "4489a2"), 67),
    (3, "1", "2", "4", ("27a2", "27a4"), 27),
    (3, "9/7", "27/49", "-54/49", ("3675b1", "47775b1"), None),
    (3, "-5/14", "125/392", "375/1568", ("1225h1", "1225h2"), 37),
    (3, "11/39", "1771/6591", "116380/257049", ("26569a1", "26569a2"), 163),
)

# (x(T), y(T)); every k also has the line T = 0
KNOWN_FAMILIES = {
    1: (
        ("0", "-T^3"),
        ("-T", "-T^2 - T"),
        ("-T", "-T"),
        ("T^2", "T^2"),
        ("T^2", "-T^4 + T^2"),
        ("T^3 + T^2", "T^4 + 2 T^3 + T^2"),
        ("T^3 - T", "T^4 - T^2 - T"),
    ),
    3: (
        ("-T", "-T"),
        ("-T", "-T^2 - T"),
        ("T^2", "-T^4 + T^2"),
        ("T^3 + T^2", "-T^5 - T^4 + T^2"),
    ),
}

SEARCH_HEIGHTS_REPORTED = (3000, 10000)  # H(T), H(x) of the published search


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------


def fingerprints() -> list[tuple[str, bool]]:
    """Cheap structural checks on the transcribed data; every entry should be True."""
    from .arith.poly import parse_poly

    out = []
    out.append(("four curves", len(CURVES) == 4 and all(len(a) == 5 for a in CURVES.values())))
    out.append(("trace tables", all(len(v) == len(TRACE_PRIMES) for v in TRACES.values())))
    out.append(("symmetric matrix 14x14", len(SYMMETRIC_CHANGE_OF_BASIS) == 14
                and all(len(r) == 14 for r in SYMMETRIC_CHANGE_OF_BASIS)))
    out.append(("skew matrix 12x12", len(SKEW_CHANGE_OF_BASIS) == 12
                and all(len(r) == 12 for r in SKEW_CHANGE_OF_BASIS)))
    fixed_rows = all(
        SYMMETRIC_CHANGE_OF_BASIS[i - 1] == tuple(int(j == i - 1) for j in range(14)) for i in SYMMETRIC_FIXED_SLOTS
    )
    out.append(("symmetric unit rows", fixed_rows))
    out.append(("table 1 has 25 rows", len(TABLE1_SERIES) + len(TABLE1_EXACT) == 25))
    out.append(("table 2 has 7 rows", len(TABLE2) == 7))
    gens = ("T", "x", "y")
    for k, text in DOUBLE_COVERS.items():
        F = parse_poly(text, gens)
        lead = F.coeff((0, 10, 0)) == 1 and F.degree_in("x") == 10 and F.degree_in("y") <= 1
        if k == 1:
            lead = lead and F.coeff((2, 8, 1)) == -2 and F.coeff((1, 8, 1)) == 2
        else:
            lead = lead and F.coeff((1, 8, 1)) == -14
        out.append((f"F_{k} leading terms", lead))
    g = parse_poly(MORPHISM_G[1], ("x",)), parse_poly(MORPHISM_G[2], ("x",))
    h = parse_poly(MORPHISM_H[1], ("x",)), parse_poly(MORPHISM_H[2], ("x",))
    out.append(("morphism degrees", all(p.degree() == 7 for p in g) and all(p.degree() == 17 for p in h)))
    return out
