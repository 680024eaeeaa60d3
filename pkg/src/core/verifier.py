import json
import sys
from typing import Any, Dict, List, Optional

from src.config.settings import get_default_seed, get_diagnostic_limit
from src.core.autocorr import acf_direct, acf_via_differences, verify_lemma3, verify_theorem1
from src.core.cyclotomy import (build_system, cyclotomic_numbers, lemma2_counts, lemma2_singleton,
                                lemma2_zero_membership)
from src.core.lincomp import (check_minimal_polynomial, lc_f4_bm, lc_f4_gcd, lc_z4, root_diagnostics,
                              zero_divisor_remark)
from src.core.ring_arith import GF4, MU_PLUS_ONE, is_zero_poly, poly_coeffs, x_pow_minus_one
from src.core.seqgen import build_sequence, generating_polynomial, gray_map, preset_spec

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
# 枚举或计算结果与附注不符；作为观测结果输出，不计入失败
NOT_REPRODUCED = "not-reproduced"


def _claim(name: str, passed: Optional[bool], detail: str) -> Dict[str, Any]:
    status = SKIPPED if passed is None else (PASS if passed else FAIL)
    return {"claim": name, "status": status, "detail": detail}


def _remark(name: str, reproduced: bool, detail: str) -> Dict[str, Any]:
    return {"claim": name, "status": PASS if reproduced else NOT_REPRODUCED, "detail": detail}


class ClaimVerifier:
    def __init__(self, verbose=False, debug=False, seed: Optional[int] = None,
                 diagnostic_limit: Optional[int] = None, diagnostics: bool = True):
        self.verbose = verbose or debug
        self.debug = debug
        self.seed = get_default_seed() if seed is None else seed
        self.diagnostic_limit = diagnostic_limit or get_diagnostic_limit()
        self.diagnostics = diagnostics

    def _progress(self, message):
        """进度信息写到标准错误，标准输出只留给结果"""
        if self.verbose:
            print(message, file=sys.stderr, flush=True)

    def _debug_print(self, message, data=None):
        """调试输出函数"""
        if self.debug:
            print(f"🔍 DEBUG: {message}", file=sys.stderr, flush=True)
            if data is not None:
                if isinstance(data, (list, dict)):
                    print(f"    数据: {json.dumps(data, ensure_ascii=False, indent=2, default=str)}",
                          file=sys.stderr)
                else:
                    print(f"    数据: {str(data)}", file=sys.stderr)
            print("    " + "-" * 50, file=sys.stderr, flush=True)

    def verify(self, p: int, g: Optional[int] = None) -> List[Dict[str, Any]]:
        """
        依次验证 p 下的全部结论

        Args:
            p: ≡ 1 (mod 4) 的素数（调用前已校验）
            g: 原根（可选）

        Returns:
            List[Dict]: 每条结论一项 {claim, status, detail}
        """
        sys_ = build_system(p, g)
        self._progress(f"\n📐 开始验证 p = {p}, g = {sys_.g}")
        self._progress("=" * 60)

        results = []
        steps = [
            ("📊 分圆数与类成员计数", self._check_cyclotomy),
            ("📈 自相关（取值集合、置零端点、最大值闭式）", self._check_autocorrelation),
            ("🧮 GF(4) 线性复杂度（eq6、eq7）", self._check_lc_f4),
            ("🔢 Z4 线性复杂度（eq6、eq7）", self._check_lc_z4),
            ("🎯 U(1) 与 S(1)", self._check_evaluations),
        ]
        if self.diagnostics:
            steps.append(("🔬 扩域根诊断", self._check_diagnostics))

        for title, step in steps:
            self._progress(f"{title}...")
            for result in step(sys_):
                icon = {PASS: "✅", FAIL: "❌", SKIPPED: "⏭️ ", NOT_REPRODUCED: "⚠️ "}[result["status"]]
                self._progress(f"  {icon} {result['claim']}: {result['detail']}")
                results.append(result)

        failed = [r["claim"] for r in results if r["status"] == FAIL]
        remarks = sum(r["status"] == NOT_REPRODUCED for r in results)
        self._progress(f"\n📊 验证总结: {len(results) - len(failed)}/{len(results)} 项未失败（其中 {remarks} 项附注未复现）")
        return results

    def _check_cyclotomy(self, sys_) -> List[Dict[str, Any]]:
        p = sys_.p
        numbers = cyclotomic_numbers(sys_)
        self._debug_print("分圆数表", [list(row) for row in numbers.table])

        lemma2_ok = True
        for u in range(1, p):
            for j in range(4):
                lemma2_ok &= lemma2_singleton(sys_, j, u).holds
                lemma2_ok &= lemma2_zero_membership(sys_, j, u).holds
                for l in range(4):
                    lemma2_ok &= lemma2_counts(sys_, j, l, u, numbers).holds
        return [
            _claim("cyclotomic_identity", numbers.identity_value == -1 and numbers.total == p - 2,
                   f"total={numbers.total}, Σ(j,0)−Σ(j,2)={numbers.identity_value}"),
            _claim("lemma2", lemma2_ok, "全部 (j, l, u) 组合与分圆数一致" if lemma2_ok else "存在不一致的组合"),
        ]

    def _check_autocorrelation(self, sys_) -> List[Dict[str, Any]]:
        p = sys_.p
        report = verify_theorem1(p, sys_.g)
        self._debug_print("按 CRT 情形的自相关取值表", report.case_table)

        agree = True
        for which in ("eq6", "eq7"):
            spec = preset_spec(p, sys_.g, which)
            agree &= acf_direct(build_sequence(spec, sys_)) == acf_via_differences(spec, sys_)

        lemma3 = verify_lemma3(p, sys_.g)
        return [
            _claim("acf_decomposition", agree, "直接计算与差函数分解一致" if agree else "两种计算不一致"),
            _claim("theorem1", report.passed,
                   f"case {report.case}: {{{', '.join(report.observed)}}}"
                   + (f", offending w={report.offending}" if report.offending else "")),
            _remark("zeroed_endpoints", report.zeroed_passed,
                    "|R(w)|^2 = 4 对全部 w ≠ 0" if report.zeroed_passed
                    else f"未复现: w={report.zeroed_offending} 处 |R(w)|^2 ≠ 4, "
                         f"取值 {{{', '.join(report.zeroed_observed)}}}"),
            _claim("lemma3", lemma3.passed,
                   f"x={lemma3.x}, y={lemma3.y}, max|R|^2={lemma3.attained_max}, "
                   f"predicted={lemma3.predicted_max}, signs={lemma3.matching_signs}"),
        ]

    def _check_lc_f4(self, sys_) -> List[Dict[str, Any]]:
        p = sys_.p
        N = 2 * p
        u6 = gray_map(build_sequence(preset_spec(p, sys_.g, "eq6"), sys_))
        gcd_result = lc_f4_gcd(u6)
        bm_result = lc_f4_bm(u6)
        minimal = check_minimal_polynomial(u6, gcd_result)
        self._debug_print("eq6 的 gcd(x^N − 1, U(x))", poly_coeffs(gcd_result.gcd))

        if p % 8 == 1:
            expected = N
            structure_ok = gcd_result.gcd.degree == 0
        else:
            expected = (3 * p + 1) // 2
            # gcd 无平方因子且整除 (x^p − 1)/(x − 1)
            cofactor = x_pow_minus_one(p) // x_pow_minus_one(1)
            gcd = gcd_result.gcd
            structure_ok = (gcd.degree == (p - 1) // 2 and gcd.is_square_free()
                            and is_zero_poly(cofactor % gcd))
        theorem2 = gcd_result.L == expected and bm_result.L == expected and structure_ok and minimal.passed

        u7 = gray_map(build_sequence(preset_spec(p, sys_.g, "eq7"), sys_))
        lemma5_gcd, lemma5_bm = lc_f4_gcd(u7).L, lc_f4_bm(u7).L
        return [
            _claim("theorem2", theorem2,
                   f"L_gcd={gcd_result.L}, L_bm={bm_result.L}, expected={expected}, "
                   f"deg gcd={gcd_result.gcd.degree}, minimal={minimal.passed}"),
            _claim("lemma5", lemma5_gcd == N and lemma5_bm == N,
                   f"L_gcd={lemma5_gcd}, L_bm={lemma5_bm}, expected={N}"),
        ]

    def _check_lc_z4(self, sys_) -> List[Dict[str, Any]]:
        p = sys_.p
        N = 2 * p
        results = []
        for name, which in (("theorem3", "eq6"), ("lemma7", "eq7")):
            result = lc_z4(build_sequence(preset_spec(p, sys_.g, which), sys_))
            cert = result.certificate
            self._debug_print(f"{which} 的 Z4 见证多项式", result.poly_coeffs())
            ok = result.L == N and cert is not None and cert.verified
            results.append(_claim(name, ok, f"L={result.L}, expected={N}, "
                                            f"certificate={'verified' if cert and cert.verified else 'missing'}"))
        remark = zero_divisor_remark(p, self.diagnostic_limit, self.seed)
        results.append(_claim("zero_divisor_remark",
                              None if remark["vanishes"] is None else (remark["vanishes"] and not remark["divisible"]),
                              f"vanishes={remark['vanishes']}, divisible={remark['divisible']}"))
        return results

    def _check_evaluations(self, sys_) -> List[Dict[str, Any]]:
        p = sys_.p
        s6 = build_sequence(preset_spec(p, sys_.g, "eq6"), sys_)
        s7 = build_sequence(preset_spec(p, sys_.g, "eq7"), sys_)
        u_at_one = int(generating_polynomial(gray_map(s6), "GF4")(GF4(1)))
        s_at_one = [generating_polynomial(s, "Z4").evaluate(1) for s in (s6, s7)]
        return [
            _claim("u_at_one", u_at_one == MU_PLUS_ONE, f"U(1)={u_at_one} (μ+1={MU_PLUS_ONE})"),
            _claim("s_at_one", s_at_one == [2, 2], f"S(1)={s_at_one[0]} (eq6), {s_at_one[1]} (eq7)"),
        ]

    def _check_diagnostics(self, sys_) -> List[Dict[str, Any]]:
        s6 = build_sequence(preset_spec(sys_.p, sys_.g, "eq6"), sys_)
        report = root_diagnostics(gray_map(s6), sys_, s6, limit=self.diagnostic_limit, seed=self.seed)
        self._debug_print("根诊断细节", report.details)
        for notice in report.notices:
            self._progress(f"  ⚠️  {notice}")
        skipped_detail = "; ".join(report.notices) or "p ≡ 1 (mod 8) 时不适用"
        return [_claim(f"diagnostics.{name}", value, "ok" if value else (skipped_detail if value is None else "mismatch"))
                for name, value in report.checks.items()]


def failed_claims(results: List[Dict[str, Any]]) -> List[str]:
    return [r["claim"] for r in results if r["status"] == FAIL]
