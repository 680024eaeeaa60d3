"""
序列构造

由分配向量 (j_0..j_3)、(l_0..l_3) 构造周期 2p 的四元序列，两个命名预设，
Gray 映射得到的 GF(4) 序列以及生成多项式。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from src.core.cyclotomy import CyclotomicSystem, build_system
from src.core.errors import DomainError
from src.core.ring_arith import GF4, MU, MU_PLUS_ONE, Z4Poly, poly_from_coeffs


class Variant(str, Enum):
    STANDARD = "standard"
    ZEROED = "zeroed"


# 两个命名构造的分配向量
PRESETS = {
    "eq6": ((0, 1, 2, 3), (1, 2, 3, 0)),
    "eq7": ((0, 2, 1, 3), (2, 0, 3, 1)),
}

# Gray 映射 0→0, 1→1, 2→μ+1, 3→μ（按 galois 的整数表示）
GRAY_LABELS = (0, 1, MU_PLUS_ONE, MU)
GRAY_INVERSE = tuple(GRAY_LABELS.index(v) for v in range(4))


def _is_permutation(vec: Sequence[int]) -> bool:
    return len(vec) == 4 and sorted(vec) == [0, 1, 2, 3]


@dataclass(frozen=True)
class SequenceSpec:
    """序列规格：(p, g) 与两个置换向量完全决定序列"""
    p: int
    g: int
    jvec: Tuple[int, int, int, int]
    lvec: Tuple[int, int, int, int]
    variant: Variant = Variant.STANDARD

    def __post_init__(self):
        object.__setattr__(self, "jvec", tuple(int(v) for v in self.jvec))
        object.__setattr__(self, "lvec", tuple(int(v) for v in self.lvec))
        object.__setattr__(self, "variant", Variant(self.variant))
        if not _is_permutation(self.jvec):
            raise DomainError(f"jvec 必须是 0..3 的置换: {self.jvec}")
        if not _is_permutation(self.lvec):
            raise DomainError(f"lvec 必须是 0..3 的置换: {self.lvec}")

    def with_variant(self, variant: Variant) -> "SequenceSpec":
        return SequenceSpec(self.p, self.g, self.jvec, self.lvec, variant)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "g": self.g,
            "jvec": list(self.jvec),
            "lvec": list(self.lvec),
            "variant": self.variant.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SequenceSpec":
        return cls(
            p=int(data["p"]),
            g=int(data["g"]),
            jvec=tuple(data["jvec"]),
            lvec=tuple(data["lvec"]),
            variant=Variant(data.get("variant", Variant.STANDARD.value)),
        )


@dataclass(frozen=True)
class QuaternarySequence:
    """Z4 上周期 N = 2p 的序列 s(0)..s(N−1)"""
    values: Tuple[int, ...]
    spec: Optional[SequenceSpec] = None

    @property
    def period(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)


@dataclass(frozen=True)
class F4Sequence:
    """GF(4) 上的序列 u(0)..u(N−1)，元素取 galois 整数表示"""
    values: Tuple[int, ...]
    spec: Optional[SequenceSpec] = None

    @property
    def period(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.uint8)


def symbol_classes(spec: SequenceSpec, sys: CyclotomicSystem) -> List[Tuple[int, ...]]:
    """C_k = H_{0, j_k} ∪ H_{1, l_k}，k = 0..3"""
    return [tuple(sorted(sys.lifted[(0, spec.jvec[k])] + sys.lifted[(1, spec.lvec[k])])) for k in range(4)]


def _system_for(spec: SequenceSpec, sys: Optional[CyclotomicSystem]) -> CyclotomicSystem:
    if sys is None:
        return build_system(spec.p, spec.g)
    if (sys.p, sys.g) != (spec.p, spec.g):
        raise DomainError(f"分圆系统 (p={sys.p}, g={sys.g}) 与规格 (p={spec.p}, g={spec.g}) 不一致")
    return sys


def build_sequence(spec: SequenceSpec, sys: Optional[CyclotomicSystem] = None) -> QuaternarySequence:
    """
    按定义构造四元序列

    Args:
        spec: 序列规格
        sys: 已构造的分圆系统（可选）

    Returns:
        QuaternarySequence: s(t) = k（t ∈ C_k），s(0) = 0，s(p) = 2（置零变体为 0）
    """
    sys = _system_for(spec, sys)
    values = [0] * sys.period
    for k, members in enumerate(symbol_classes(spec, sys)):
        for t in members:
            values[t] = k
    values[0] = 0
    values[spec.p] = 0 if spec.variant == Variant.ZEROED else 2
    return QuaternarySequence(values=tuple(values), spec=spec)


def preset_spec(p: int, g: Optional[int] = None, which: str = "eq6",
                variant: Variant = Variant.STANDARD) -> SequenceSpec:
    """
    命名预设的规格

    Args:
        p: 素数
        g: 原根，缺省为最小原根
        which: eq6 或 eq7

    Returns:
        SequenceSpec: 对应的规格
    """
    if which not in PRESETS:
        raise DomainError(f"未知预设: {which}，可选 {sorted(PRESETS)}")
    if g is None:
        g = build_system(p).g
    jvec, lvec = PRESETS[which]
    return SequenceSpec(p=p, g=g, jvec=jvec, lvec=lvec, variant=variant)


def gray_map(q: QuaternarySequence) -> F4Sequence:
    """逐点 Gray 映射到 GF(4)"""
    return F4Sequence(values=tuple(GRAY_LABELS[v % 4] for v in q.values), spec=q.spec)


def inverse_gray_map(u: F4Sequence) -> QuaternarySequence:
    return QuaternarySequence(values=tuple(GRAY_INVERSE[v] for v in u.values), spec=u.spec)


def f4_sequence_from_classes(spec: SequenceSpec, sys: Optional[CyclotomicSystem] = None) -> F4Sequence:
    """直接按类成员关系给出 GF(4) 序列（0, 1, μ+1, μ 对应 C_0..C_3，p 处为 μ+1）"""
    sys = _system_for(spec, sys)
    values = [0] * sys.period
    for k, members in enumerate(symbol_classes(spec, sys)):
        for t in members:
            values[t] = GRAY_LABELS[k]
    values[spec.p] = 0 if spec.variant == Variant.ZEROED else MU_PLUS_ONE
    return F4Sequence(values=tuple(values), spec=spec)


def generating_polynomial(seq: Union[QuaternarySequence, F4Sequence],
                          ring: str) -> Union[galois.Poly, Z4Poly]:
    """
    生成多项式 Σ seq(t) x^t

    Args:
        seq: 四元序列（对应 Z4）或 GF(4) 序列（对应 GF4）
        ring: "Z4" 或 "GF4"

    Returns:
        Z4Poly 或 galois.Poly
    """
    ring = ring.upper()
    if ring == "Z4" and isinstance(seq, QuaternarySequence):
        return Z4Poly.from_coeffs(seq.values)
    if ring in ("GF4", "F4") and isinstance(seq, F4Sequence):
        return poly_from_coeffs(seq.values, field=GF4)
    raise DomainError(f"序列字母表与环 {ring} 不匹配: {type(seq).__name__}")


def constant_sequence(value: int, period: int, ring: str = "Z4") -> Union[QuaternarySequence, F4Sequence]:
    """常数序列，用于边界测试"""
    if ring.upper() == "Z4":
        return QuaternarySequence(values=(value % 4,) * period)
    return F4Sequence(values=(value % 4,) * period)
