import unittest
from itertools import permutations

from sympy import primerange

from src.core.autocorr import (THEOREM1_VALUES, acf_direct, acf_via_differences, lemma3_candidates,
                               verify_lemma3, verify_theorem1)
from src.core.cyclotomy import build_system
from src.core.errors import UnsupportedVariantError
from src.core.ring_arith import conjugate, gaussian, norm_sq
from src.core.seqgen import SequenceSpec, Variant, build_sequence, preset_spec

PRIMES_5_MOD_8 = [p for p in primerange(5, 201) if p % 8 == 5]
PRIMES_1_MOD_8 = [p for p in primerange(5, 201) if p % 8 == 1]


class TestAcf(unittest.TestCase):
    def test_peak(self):
        profile = acf_direct(build_sequence(preset_spec(13, 2, "eq6")))
        self.assertEqual(profile.values[0], gaussian(26))
        self.assertEqual(len(profile.nontrivial), 25)

    def test_conjugate_symmetry(self):
        profile = acf_direct(build_sequence(SequenceSpec(p=17, g=3, jvec=(3, 1, 0, 2), lvec=(2, 3, 1, 0))))
        N = profile.period
        for w in range(1, N):
            self.assertEqual(profile.values[N - w], conjugate(profile.values[w]))

    def test_difference_decomposition_matches_direct(self):
        sys_ = build_system(13)
        specs = [
            preset_spec(13, 2, "eq6"),
            preset_spec(13, 2, "eq7"),
            SequenceSpec(p=13, g=2, jvec=(2, 0, 3, 1), lvec=(1, 3, 0, 2)),
        ]
        for spec in specs:
            self.assertEqual(acf_via_differences(spec, sys_), acf_direct(build_sequence(spec, sys_)))

    def test_difference_decomposition_p17(self):
        spec = SequenceSpec(p=17, g=3, jvec=(1, 0, 3, 2), lvec=(0, 2, 3, 1))
        self.assertEqual(acf_via_differences(spec), acf_direct(build_sequence(spec)))

    def test_zeroed_variant_rejected(self):
        with self.assertRaises(UnsupportedVariantError):
            acf_via_differences(preset_spec(13, 2, "eq6", Variant.ZEROED))

    def test_rows(self):
        rows = acf_direct(build_sequence(preset_spec(5, 2, "eq6"))).to_rows()
        self.assertEqual(rows[0], {"w": 0, "re": 10, "im": 0, "norm_sq": 100})
        self.assertEqual(len(rows), 10)


class TestAcfValueSets(unittest.TestCase):
    def test_case_i(self):
        for p in PRIMES_5_MOD_8:
            report = verify_theorem1(p)
            self.assertTrue(report.passed, (p, report.offending))
            self.assertEqual(report.case, "i")

    def test_case_ii(self):
        for p in PRIMES_1_MOD_8:
            report = verify_theorem1(p)
            self.assertTrue(report.passed, (p, report.offending))
            self.assertEqual(report.case, "ii")

    def test_values_inside_allowed_sets(self):
        profile = acf_direct(build_sequence(preset_spec(13, 2, "eq6")))
        allowed = THEOREM1_VALUES[5]
        self.assertTrue(all((int(z.x), int(z.y)) in allowed for z in profile.nontrivial))
        self.assertEqual(profile.max_nontrivial_norm_sq, 8)

    def test_zeroed_eq6_keeps_norm_eight_at_even_shifts(self):
        report = verify_theorem1(13)
        self.assertFalse(report.zeroed_passed)
        self.assertEqual(report.zeroed_offending, list(range(2, 26, 2)))
        self.assertEqual(set(report.zeroed_observed), {"2", "2i", "-2i", "-2+2i", "-2-2i"})
        # 置零端点的结果不影响取值集合检查
        self.assertTrue(report.passed)

    def test_zeroed_eq6_profile(self):
        profile = acf_direct(build_sequence(preset_spec(13, 2, "eq6", Variant.ZEROED)))
        for w in range(1, 26):
            self.assertEqual(norm_sq(profile.values[w]), 8 if w % 2 == 0 else 4, w)

    def test_zeroed_specs_with_flat_magnitude(self):
        sys_ = build_system(13)
        flat = 0
        for jvec in permutations(range(4)):
            for lvec in permutations(range(4)):
                spec = SequenceSpec(p=13, g=2, jvec=jvec, lvec=lvec, variant=Variant.ZEROED)
                profile = acf_direct(build_sequence(spec, sys_))
                flat += all(norm_sq(z) == 4 for z in profile.nontrivial)
        self.assertEqual(flat, 64)

    def test_case_table(self):
        report = verify_theorem1(13)
        self.assertTrue(report.case_table)
        self.assertIn("w0=1,w1=0", report.case_table)


class TestDifferenceDecompositionExhaustive(unittest.TestCase):
    def test_all_specs(self):
        for p in (13, 17):
            sys_ = build_system(p)
            for jvec in permutations(range(4)):
                for lvec in permutations(range(4)):
                    spec = SequenceSpec(p=p, g=sys_.g, jvec=jvec, lvec=lvec)
                    self.assertEqual(acf_via_differences(spec, sys_), acf_direct(build_sequence(spec, sys_)),
                                     (p, jvec, lvec))


class TestMaxAcfBound(unittest.TestCase):
    def test_p13(self):
        report = verify_lemma3(13)
        self.assertEqual(report.y, -1)
        self.assertEqual(report.predicted_max, 20)
        self.assertTrue(report.passed)

    def test_p17(self):
        report = verify_lemma3(17)
        self.assertEqual(report.predicted_max, 64)
        self.assertTrue(report.passed)

    def test_more_primes(self):
        for p in (29, 37, 41):
            self.assertTrue(verify_lemma3(p).passed, p)

    def test_candidates(self):
        self.assertEqual(lemma3_candidates(13, -1), {(1, 1): 20, (1, -1): 20, (-1, 1): 4, (-1, -1): 4})
        self.assertEqual(lemma3_candidates(17, 2), {(1, 0): 0, (-1, 0): 64})
