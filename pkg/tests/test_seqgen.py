import unittest

from src.core.cyclotomy import build_system
from src.core.errors import DomainError
from src.core.ring_arith import GF4, MU, MU_PLUS_ONE
from src.core.seqgen import (F4Sequence, SequenceSpec, Variant, build_sequence, constant_sequence,
                             f4_sequence_from_classes, generating_polynomial, gray_map, inverse_gray_map,
                             preset_spec, symbol_classes)


class TestExampleSequence(unittest.TestCase):
    """p = 13、g = 2 时 eq6 构造的四个符号类"""

    def setUp(self):
        self.spec = preset_spec(13, 2, "eq6")
        self.seq = build_sequence(self.spec)

    def positions(self, symbol):
        return {t for t, v in enumerate(self.seq.values) if v == symbol}

    def test_symbol_positions(self):
        self.assertEqual(self.positions(0), {0, 5, 14, 15, 16, 19, 22})
        self.assertEqual(self.positions(1), {2, 6, 17, 18, 23, 25})
        self.assertEqual(self.positions(2), {4, 7, 10, 11, 12, 13, 21})
        self.assertEqual(self.positions(3), {1, 3, 8, 9, 20, 24})

    def test_endpoints(self):
        self.assertEqual(self.seq.values[0], 0)
        self.assertEqual(self.seq.values[13], 2)
        zeroed = build_sequence(self.spec.with_variant(Variant.ZEROED))
        self.assertEqual(zeroed.values[13], 0)
        self.assertEqual(zeroed.values[:13], self.seq.values[:13])

    def test_symbol_classes_sizes(self):
        classes = symbol_classes(self.spec, build_system(13))
        self.assertEqual([len(c) for c in classes], [6, 6, 6, 6])


class TestSpec(unittest.TestCase):
    def test_eq7_zero_positions(self):
        seq = build_sequence(preset_spec(13, 2, "eq7"))
        self.assertEqual({t for t, v in enumerate(seq.values) if v == 0}, {0, 14, 16, 22, 17, 23, 25})

    def test_rejects_non_permutation(self):
        with self.assertRaises(DomainError):
            SequenceSpec(p=13, g=2, jvec=(0, 0, 1, 2), lvec=(0, 1, 2, 3))

    def test_unknown_preset(self):
        with self.assertRaises(DomainError):
            preset_spec(13, 2, "eq8")

    def test_system_mismatch(self):
        with self.assertRaises(DomainError):
            build_sequence(preset_spec(13, 2, "eq6"), build_system(17))

    def test_dict_round_trip(self):
        spec = preset_spec(17, None, "eq7", Variant.ZEROED)
        self.assertEqual(SequenceSpec.from_dict(spec.to_dict()), spec)
        self.assertEqual(spec.g, 3)


class TestGrayMap(unittest.TestCase):
    def test_labels(self):
        seq = constant_sequence(2, 4)
        self.assertEqual(gray_map(seq).values, (MU_PLUS_ONE,) * 4)
        self.assertEqual(gray_map(constant_sequence(3, 2)).values, (MU, MU))

    def test_inverse(self):
        seq = build_sequence(preset_spec(13, 2, "eq6"))
        self.assertEqual(inverse_gray_map(gray_map(seq)).values, seq.values)

    def test_direct_class_labelling_agrees(self):
        spec = preset_spec(29, None, "eq6")
        self.assertEqual(f4_sequence_from_classes(spec).values, gray_map(build_sequence(spec)).values)

    def test_parity_preserved(self):
        seq = build_sequence(preset_spec(13, 2, "eq7"))
        for s, u in zip(seq.values, gray_map(seq).values):
            self.assertEqual(s % 2 == 1, u in (1, MU))


class TestGeneratingPolynomial(unittest.TestCase):
    def test_u_at_one(self):
        u = gray_map(build_sequence(preset_spec(13, 2, "eq6")))
        U = generating_polynomial(u, "GF4")
        self.assertEqual(int(U(GF4(1))), MU_PLUS_ONE)

    def test_s_at_one(self):
        for which in ("eq6", "eq7"):
            S = generating_polynomial(build_sequence(preset_spec(13, 2, which)), "Z4")
            self.assertEqual(S.evaluate(1), 2)

    def test_alphabet_mismatch(self):
        with self.assertRaises(DomainError):
            generating_polynomial(F4Sequence(values=(1, 2)), "Z4")
        with self.assertRaises(DomainError):
            generating_polynomial(constant_sequence(1, 2), "GF4")
