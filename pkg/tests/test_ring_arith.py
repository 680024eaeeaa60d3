import unittest

import numpy as np

from src.core.errors import DomainError, PreconditionError
from src.core.ring_arith import (GF4, GF4_INV, GF4_MUL, MU, MU_PLUS_ONE, GF4Element, PolyDegree, Z4Poly,
                                 build_ext_field, conjugate, find_root_of_unity, gaussian, gaussian_str,
                                 gf4_arith, i_power, norm_sq, poly_coeffs, poly_degree, poly_from_coeffs,
                                 poly_gcd_f4, x_pow_minus_one, z4_inverse)


class TestGF4(unittest.TestCase):
    def test_mu_squared_is_mu_plus_one(self):
        self.assertEqual(GF4_MUL[MU, MU], MU_PLUS_ONE)
        self.assertEqual(GF4Element(MU) * GF4Element(MU), GF4Element(MU_PLUS_ONE))

    def test_inverse_table(self):
        self.assertEqual(GF4_INV[1], 1)
        self.assertEqual(GF4_INV[MU], MU_PLUS_ONE)
        self.assertEqual(GF4_INV[MU_PLUS_ONE], MU)
        for a in range(1, 4):
            self.assertEqual(GF4_MUL[a, GF4_INV[a]], 1)

    def test_addition_is_xor(self):
        self.assertEqual(gf4_arith(GF4Element(MU), GF4Element(1), "add"), GF4Element(MU_PLUS_ONE))
        self.assertEqual(GF4Element(MU) + GF4Element(MU), GF4Element(0))

    def test_inverse_of_zero_raises(self):
        with self.assertRaises(DomainError):
            GF4Element(0).inverse()
        with self.assertRaises(DomainError):
            gf4_arith(GF4Element(0), GF4Element(0), "inv")

    def test_bits_and_str(self):
        self.assertEqual(GF4Element.from_bits(1, 1), GF4Element(MU_PLUS_ONE))
        self.assertEqual(GF4Element(MU).bits, (1, 0))
        self.assertEqual(str(GF4Element(MU)), "μ")

    def test_out_of_range_element(self):
        with self.assertRaises(DomainError):
            GF4Element(4)


class TestZ4(unittest.TestCase):
    def test_units(self):
        self.assertEqual(z4_inverse(3), 3)
        self.assertEqual(z4_inverse(1), 1)
        with self.assertRaises(DomainError):
            z4_inverse(2)

    def test_poly_normalisation_and_degree(self):
        f = Z4Poly.from_coeffs([1, 2, 4, 0])
        self.assertEqual(f.coeffs, (1, 2))
        self.assertEqual(f.degree, 1)
        self.assertEqual(Z4Poly.from_coeffs([0, 4]).degree, PolyDegree.NEG_INFINITY)

    def test_multiplication_has_zero_divisors(self):
        two = Z4Poly.from_coeffs([2])
        self.assertTrue((two * two).is_zero)

    def test_mod_xn_minus_one(self):
        f = Z4Poly.from_coeffs([1, 0, 0, 3])
        self.assertTrue(f.mod_xn_minus_one(3).is_zero)

    def test_divmod_monic(self):
        # x^2 + 3 = (x + 1)(x + 3)
        q, r = Z4Poly.from_coeffs([3, 0, 1]).divmod_monic(Z4Poly.from_coeffs([1, 1]))
        self.assertEqual(q.coeffs, (3, 1))
        self.assertTrue(r.is_zero)

    def test_divmod_requires_monic(self):
        with self.assertRaises(DomainError):
            Z4Poly.from_coeffs([1, 2]).divmod_monic(Z4Poly.from_coeffs([1, 2]))

    def test_evaluate(self):
        self.assertEqual(Z4Poly.from_coeffs([1, 1, 1]).evaluate(1), 3)


class TestGaussian(unittest.TestCase):
    def test_powers_of_i(self):
        self.assertEqual(i_power(2), gaussian(-1))
        self.assertEqual(i_power(-1), gaussian(0, -1))

    def test_norm_and_conjugate(self):
        z = gaussian(-2, 2)
        self.assertEqual(norm_sq(z), 8)
        self.assertEqual(conjugate(z), gaussian(-2, -2))

    def test_string_form(self):
        self.assertEqual(gaussian_str(gaussian(-2, 2)), "-2+2i")
        self.assertEqual(gaussian_str(gaussian(0, -2)), "-2i")
        self.assertEqual(gaussian_str(gaussian(0, 1)), "i")
        self.assertEqual(gaussian_str(gaussian(-4)), "-4")


class TestPolynomials(unittest.TestCase):
    def test_x_pow_minus_one_in_characteristic_two(self):
        self.assertEqual(poly_coeffs(x_pow_minus_one(3)), [1, 0, 0, 1])

    def test_gcd_is_monic(self):
        # μ(x + 1) 与 x^2 + 1 = (x + 1)^2 的 gcd 为 x + 1
        a = poly_from_coeffs([MU, MU])
        b = x_pow_minus_one(2)
        self.assertEqual(poly_coeffs(poly_gcd_f4(a, b)), [1, 1])

    def test_gcd_of_zeros_raises(self):
        zero = poly_from_coeffs([0])
        self.assertEqual(poly_degree(zero), PolyDegree.NEG_INFINITY)
        with self.assertRaises(DomainError):
            poly_gcd_f4(zero, zero)

    def test_poly_field(self):
        self.assertIs(poly_from_coeffs([1, MU]).field, GF4)


class TestExtensionField(unittest.TestCase):
    def test_root_of_unity_has_order_p(self):
        ext = build_ext_field(4, 6)
        alpha = find_root_of_unity(ext, 13, np.random.default_rng(1))
        self.assertFalse(alpha.is_one)
        self.assertTrue((alpha ** 13).is_one)

    def test_power_table_matches_power(self):
        ext = build_ext_field(2, 4)
        alpha = find_root_of_unity(ext, 5, np.random.default_rng(7))
        table = ext.power_table(alpha, 5)
        self.assertEqual(tuple(int(c) for c in table[3]), (alpha ** 3).coeffs)

    def test_same_seed_same_root(self):
        ext = build_ext_field(4, 2)
        a = find_root_of_unity(ext, 5, np.random.default_rng(3))
        b = find_root_of_unity(ext, 5, np.random.default_rng(3))
        self.assertEqual(a, b)

    def test_missing_root_raises(self):
        ext = build_ext_field(4, 2)
        with self.assertRaises(PreconditionError):
            find_root_of_unity(ext, 7, np.random.default_rng(0))

    def test_base_field_embedding(self):
        ext = build_ext_field(4, 3)
        mu = ext.element([MU])
        self.assertEqual(mu * mu, ext.element([MU_PLUS_ONE]))
        self.assertEqual(mu + mu, ext.zero)


class TestFieldLaws(unittest.TestCase):
    FIELDS = ((4, 3), (4, 6), (2, 5), (2, 12))

    def test_ring_axioms_on_random_triples(self):
        for q, m in self.FIELDS:
            ext = build_ext_field(q, m)
            rng = np.random.default_rng(q * 100 + m)
            for _ in range(30):
                a, b, c = ext.draw(rng), ext.draw(rng), ext.draw(rng)
                self.assertEqual((a * b) * c, a * (b * c), (q, m))
                self.assertEqual((a + b) + c, a + (b + c), (q, m))
                self.assertEqual(a * (b + c), a * b + a * c, (q, m))

    def test_frobenius_is_additive(self):
        for q, m in self.FIELDS:
            ext = build_ext_field(q, m)
            rng = np.random.default_rng(m)
            for _ in range(20):
                a, b = ext.draw(rng), ext.draw(rng)
                self.assertEqual((a + b) ** q, a ** q + b ** q, (q, m))

    def test_gf2_12_multiplicative_order(self):
        ext = build_ext_field(2, 12)
        self.assertEqual(ext.order, 4096)
        rng = np.random.default_rng(4095)
        for _ in range(20):
            x = ext.draw(rng)
            if x.is_zero:
                continue
            self.assertTrue((x ** 4095).is_one)

    def test_gcd_lcm_degrees(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            a, b = (poly_from_coeffs(list(rng.integers(0, 4, size=int(rng.integers(0, 8)))) + [int(rng.integers(1, 4))])
                    for _ in range(2))
            g = poly_gcd_f4(a, b)
            lcm = (a * b) // g
            self.assertEqual(poly_degree(g) + poly_degree(lcm), poly_degree(a) + poly_degree(b))
