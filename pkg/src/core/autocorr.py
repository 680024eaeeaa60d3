"""
周期自相关

R(w) = Σ_n i^{s(n) − s(n+w)}，全部以高斯整数精确计算；幅度比较只用整数 |R|^2。
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.cyclotomy import CyclotomicSystem, build_system, difference_function, quadratic_partition
from src.core.errors import UnsupportedVariantError
from src.core.ring_arith import GaussianInt, gaussian, gaussian_parts, gaussian_str, norm_sq
from src.core.seqgen import (QuaternarySequence, SequenceSpec, Variant, build_sequence, preset_spec,
                             symbol_classes)

# p ≡ 5、p ≡ 1 (mod 8) 两种情形下 eq6 序列 w ≠ 0 的取值集合
THEOREM1_VALUES = {
    5: frozenset({(-2, 2), (-2, -2), (0, 2), (0, -2), (-2, 0)}),
    1: frozenset({(-4, 0), (2, 0), (-2, 0), (0, 0)}),
}


@dataclass(frozen=True)
class AcfProfile:
    """R(0)..R(N−1)，值为 sympy ZZ_I 高斯整数"""
    period: int
    values: Tuple[GaussianInt, ...]

    @property
    def nontrivial(self) -> Tuple[GaussianInt, ...]:
        return self.values[1:]

    @property
    def max_nontrivial_norm_sq(self) -> int:
        return max((norm_sq(z) for z in self.nontrivial), default=0)

    def parts(self) -> List[Tuple[int, int]]:
        return [gaussian_parts(z) for z in self.values]

    def value_multiset(self) -> Counter:
        """w ≠ 0 时取值的多重集，键为 (re, im)"""
        return Counter(gaussian_parts(z) for z in self.nontrivial)

    def to_rows(self) -> List[Dict[str, int]]:
        rows = []
        for w, z in enumerate(self.values):
            re, im = gaussian_parts(z)
            rows.append({"w": w, "re": re, "im": im, "norm_sq": re * re + im * im})
        return rows


def acf_direct(q: QuaternarySequence) -> AcfProfile:
    """
    按定义直接计算自相关

    对每个 w 统计差 s(n) − s(n+w) (mod 4) 的分布 c_0..c_3，
    R(w) = (c_0 − c_2) + (c_1 − c_3) i。
    """
    s = q.as_array()
    values = []
    for w in range(q.period):
        counts = np.bincount((s - np.roll(s, -w)) % 4, minlength=4)
        values.append(gaussian(int(counts[0] - counts[2]), int(counts[1] - counts[3])))
    return AcfProfile(period=q.period, values=tuple(values))


def _extended_classes(spec: SequenceSpec, sys: CyclotomicSystem) -> List[Tuple[int, ...]]:
    """D_0 = C_0 ∪ {0}，D_1 = C_1，D_2 = C_2 ∪ {p}，D_3 = C_3"""
    classes = [list(c) for c in symbol_classes(spec, sys)]
    classes[0].append(0)
    classes[2].append(spec.p)
    return [tuple(c) for c in classes]


def acf_via_differences(spec: SequenceSpec, sys: Optional[CyclotomicSystem] = None) -> AcfProfile:
    """
    由差函数组装实部与虚部

    相关和 Σ f(t) e(t+w) 等于 d_{−w}(F, E)，因此各项在平移 −w 处取值。

    Args:
        spec: 标准变体的序列规格
        sys: 分圆系统（可选）

    Returns:
        AcfProfile: 与 acf_direct 完全一致的结果
    """
    if spec.variant != Variant.STANDARD:
        raise UnsupportedVariantError("差函数分解只适用于 s(0)=0, s(p)=2 的标准变体，请使用 acf_direct")
    sys = sys or build_system(spec.p, spec.g)
    N = sys.period
    D0, D1, D2, D3 = _extended_classes(spec, sys)

    values = []
    for w in range(N):
        shift = (-w) % N

        def d(F, E):
            return difference_function(F, E, shift, N)

        re = (d(D0, D0) + d(D1, D1) + d(D2, D2) + d(D3, D3)
              - d(D0, D2) - d(D2, D0) - d(D1, D3) - d(D3, D1))
        im = (d(D1, D0) + d(D3, D2) + d(D0, D3) + d(D2, D1)
              - d(D1, D2) - d(D3, D0) - d(D0, D1) - d(D2, D3))
        values.append(gaussian(re, im))
    return AcfProfile(period=N, values=tuple(values))


@dataclass
class AcfValueSetReport:
    p: int
    case: str
    passed: bool
    observed: List[str]
    offending: List[int] = field(default_factory=list)
    zeroed_passed: bool = True
    zeroed_offending: List[int] = field(default_factory=list)
    zeroed_observed: List[str] = field(default_factory=list)
    case_table: Dict[str, List[str]] = field(default_factory=dict)


def theorem1_case_table(profile: AcfProfile, sys: CyclotomicSystem) -> Dict[str, List[str]]:
    """按 CRT 分量 (w0, w1 的类 h) 汇总 R(w) 的取值"""
    table: Dict[str, set] = {}
    for w in range(1, profile.period):
        w0, w1 = sys.crt(w)
        key = f"w0={w0},w1=0" if w1 == 0 else f"w0={w0},h={sys.class_of(w1)}"
        table.setdefault(key, set()).add(gaussian_str(profile.values[w]))
    return {k: sorted(v) for k, v in sorted(table.items())}


def verify_theorem1(p: int, g: Optional[int] = None) -> AcfValueSetReport:
    """
    验证 eq6 序列的自相关取值集合，并检查置零端点后是否 |R(w)|^2 = 4

    置零端点只作观测：zeroed_offending 与 zeroed_observed 记录实际取值，不影响 passed。

    Args:
        p: ≡ 1 (mod 4) 的素数
        g: 原根（可选）

    Returns:
        AcfValueSetReport: passed 为假时 offending 列出越界的 w
    """
    sys = build_system(p, g)
    spec = preset_spec(p, sys.g, "eq6")
    profile = acf_direct(build_sequence(spec, sys))
    allowed = THEOREM1_VALUES[p % 8]
    offending = [w for w in range(1, profile.period) if gaussian_parts(profile.values[w]) not in allowed]

    zeroed = acf_direct(build_sequence(spec.with_variant(Variant.ZEROED), sys))
    zeroed_offending = [w for w in range(1, zeroed.period) if norm_sq(zeroed.values[w]) != 4]

    return AcfValueSetReport(
        p=p,
        case="i" if p % 8 == 5 else "ii",
        passed=not offending,
        observed=sorted({gaussian_str(z) for z in profile.nontrivial}),
        offending=offending,
        zeroed_passed=not zeroed_offending,
        zeroed_offending=zeroed_offending,
        zeroed_observed=sorted({gaussian_str(z) for z in zeroed.nontrivial}),
        case_table=theorem1_case_table(profile, sys),
    )


@dataclass
class MaxAcfReport:
    p: int
    x: int
    y: int
    sign_pinned: bool
    attained_max: int
    predicted_max: int
    passed: bool
    matching_signs: List[Tuple[int, int]]
    attained_at: List[int]


def lemma3_candidates(p: int, y: int) -> Dict[Tuple[int, int], int]:
    """
    公式候选的模平方

    p ≡ 5 (mod 8): |−2 ± 2y ± 2i|^2；p ≡ 1 (mod 8): (−4 ± 2y)^2。
    键为 (y 前的符号, i 前的符号)，p ≡ 1 (mod 8) 时第二个符号恒为 0。
    """
    candidates = {}
    for s1 in (1, -1):
        if p % 8 == 5:
            for s2 in (1, -1):
                candidates[(s1, s2)] = (-2 + 2 * s1 * y) ** 2 + (2 * s2) ** 2
        else:
            candidates[(s1, 0)] = (-4 + 2 * s1 * y) ** 2
    return candidates


def verify_lemma3(p: int, g: Optional[int] = None) -> MaxAcfReport:
    """
    验证 eq7 序列的 max_{w≠0} |R(w)|^2 与闭式最大值一致

    Returns:
        MaxAcfReport: 同时给出取到最大值的符号组合
    """
    sys = build_system(p, g)
    partition = quadratic_partition(sys)
    profile = acf_direct(build_sequence(preset_spec(p, sys.g, "eq7"), sys))
    attained = profile.max_nontrivial_norm_sq
    candidates = lemma3_candidates(p, partition.y)
    predicted = max(candidates.values())
    return MaxAcfReport(
        p=p,
        x=partition.x,
        y=partition.y,
        sign_pinned=partition.sign_pinned,
        attained_max=attained,
        predicted_max=predicted,
        passed=attained == predicted,
        matching_signs=sorted(signs for signs, value in candidates.items() if value == attained),
        attained_at=[w for w in range(1, profile.period) if norm_sq(profile.values[w]) == attained],
    )
