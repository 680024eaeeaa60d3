"""
四阶分圆类

构造 H_0..H_3 及其在 Z_2p 中的 CRT 提升 H_{k,l}，暴力计算分圆数、二次分解，
并提供差函数以及类成员计数的检验。
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from sympy import isprime, primitive_root
from sympy.ntheory import is_primitive_root

from src.core.errors import DomainError


def find_primitive_root(p: int) -> int:
    """
    模 p 的最小正原根

    Args:
        p: 素数

    Returns:
        int: 最小原根
    """
    if not isprime(p):
        raise DomainError(f"{p} 不是素数")
    return int(primitive_root(p))


def validate_prime(p: int) -> None:
    """p 必须是 ≡ 1 (mod 4) 的素数"""
    if not isprime(p):
        raise DomainError(f"{p} 不是素数")
    if p % 4 != 1:
        raise DomainError(f"{p} 不满足 p ≡ 1 (mod 4)")


@dataclass(frozen=True)
class CyclotomicSystem:
    """
    p、原根 g 下的四阶分圆系统

    classes[k] 为 H_k（升序），lifted[(k, l)] 为 H_{k,l} ⊂ Z_2p（升序）。
    class_index[u] 给出 u 所在的类号，u = 0 处为 -1。
    """
    p: int
    g: int
    classes: Tuple[Tuple[int, ...], ...]
    lifted: Dict[Tuple[int, int], Tuple[int, ...]] = field(compare=False)
    class_index: Tuple[int, ...] = field(compare=False, repr=False)

    @property
    def R(self) -> int:
        return (self.p - 1) // 4

    @property
    def period(self) -> int:
        return 2 * self.p

    def class_of(self, u: int) -> int:
        """u 所在分圆类的下标（u ≢ 0 mod p）"""
        k = self.class_index[u % self.p]
        if k < 0:
            raise DomainError(f"{u} ≡ 0 (mod {self.p}) 不属于任何分圆类")
        return k

    def crt(self, w: int) -> Tuple[int, int]:
        """f(w) = (w mod 2, w mod p)"""
        return w % 2, w % self.p

    def from_crt(self, w0: int, w1: int) -> int:
        """CRT 逆映射 Z_2 × Z_p → Z_2p"""
        t = w1 % self.p
        return t if t % 2 == w0 % 2 else t + self.p


def build_system(p: int, g: Optional[int] = None) -> CyclotomicSystem:
    """
    构造四阶分圆系统

    Args:
        p: ≡ 1 (mod 4) 的素数
        g: 原根，缺省为最小原根

    Returns:
        CyclotomicSystem: 满足划分与 CRT 不变量的系统
    """
    validate_prime(p)
    if g is None:
        g = find_primitive_root(p)
    g %= p
    if g == 0 or not is_primitive_root(g, p):
        raise DomainError(f"{g} 不是模 {p} 的原根")

    R = (p - 1) // 4
    index = [-1] * p
    classes = []
    for k in range(4):
        members = sorted(pow(g, k + 4 * t, p) for t in range(R))
        for u in members:
            index[u] = k
        classes.append(tuple(members))

    lifted = {}
    for k in range(2):
        for l in range(4):
            lifted[(k, l)] = tuple(w for w in range(2 * p) if w % 2 == k and index[w % p] == l)

    return CyclotomicSystem(p=p, g=g, classes=tuple(classes), lifted=lifted, class_index=tuple(index))


@dataclass(frozen=True)
class CyclotomicNumbers:
    """四阶分圆数表，table[i][j] = (i, j) = |(H_i + 1) ∩ H_j|"""
    p: int
    table: Tuple[Tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        return self.table[i % 4][j % 4]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.table)

    def column_sum(self, j: int) -> int:
        return sum(self.table[i][j % 4] for i in range(4))

    @property
    def identity_value(self) -> int:
        """Σ_j (j,0) − Σ_j (j,2)，恒为 −1"""
        return self.column_sum(0) - self.column_sum(2)


def cyclotomic_numbers(sys: CyclotomicSystem) -> CyclotomicNumbers:
    """逐个枚举计算分圆数"""
    table = [[0] * 4 for _ in range(4)]
    for i, members in enumerate(sys.classes):
        for a in members:
            b = (a + 1) % sys.p
            if b:
                table[i][sys.class_index[b]] += 1
    return CyclotomicNumbers(p=sys.p, table=tuple(tuple(row) for row in table))


@dataclass(frozen=True)
class QuadraticPartition:
    """p = x^2 + 4y^2，x ≡ 1 (mod 4)；y 的符号由分圆数 (0,1) 确定"""
    p: int
    x: int
    y: int
    sign_pinned: bool = True


def quadratic_partition(sys: CyclotomicSystem,
                        numbers: Optional[CyclotomicNumbers] = None) -> QuadraticPartition:
    """
    求二次分解并固定 y 的符号

    穷举得到 (x, |y|) 后，用 (0,1) 的标准公式反解 y：
      p ≡ 5 (mod 8): 16(0,1) = p + 1 + 2x − 8y
      p ≡ 1 (mod 8): 16(0,1) = p − 3 + 2x + 8y

    Args:
        sys: 分圆系统
        numbers: 已算好的分圆数（可选）

    Returns:
        QuadraticPartition: 分解结果
    """
    p = sys.p
    x = y_abs = None
    for y in range(1, math.isqrt(p // 4) + 1):
        rest = p - 4 * y * y
        root = math.isqrt(rest)
        if root * root == rest:
            x = root if root % 4 == 1 else -root
            y_abs = y
            break
    if x is None:
        raise DomainError(f"{p} 没有形如 x^2 + 4y^2 的分解")

    numbers = numbers or cyclotomic_numbers(sys)
    sixteen = 16 * numbers(0, 1)
    if p % 8 == 5:
        numerator = p + 1 + 2 * x - sixteen
    else:
        numerator = sixteen - (p - 3 + 2 * x)
    if numerator % 8 == 0 and abs(numerator // 8) == y_abs:
        return QuadraticPartition(p=p, x=x, y=numerator // 8)
    return QuadraticPartition(p=p, x=x, y=y_abs, sign_pinned=False)


def difference_function(F: Iterable[int], E: Iterable[int], w: int, modulus: int) -> int:
    """d_w(F, E) = |F ∩ (E + w)|，运算在 Z_modulus 中"""
    mask = membership_mask({a % modulus for a in F}, modulus)
    shifted = np.array(sorted({(e + w) % modulus for e in E}), dtype=np.int64)
    return int(np.count_nonzero(mask[shifted]))


def _count_shifted(A: Iterable[int], B: Iterable[int], shift: int, p: int) -> int:
    """|A ∩ (B + shift)|，A、B ⊆ Z_p"""
    return difference_function(A, B, shift, p)


def lemma1_difference(F0: Iterable[int], F1: Iterable[int], E0: Iterable[int], E1: Iterable[int],
                      w: int, p: int) -> int:
    """
    按 CRT 分量计算 d_w(F, E)，其中 F = {0}×F0 ∪ {1}×F1，E = {0}×E0 ∪ {1}×E1

    Args:
        F0, F1, E0, E1: Z_p 的子集
        w: Z_2p 中的平移量
        p: 素数

    Returns:
        int: 差函数值
    """
    F0, F1, E0, E1 = (set(s) for s in (F0, F1, E0, E1))
    w0, w1 = w % 2, w % p
    if w0 == 0 and w1 == 0:
        return len(F0 & E0) + len(F1 & E1)
    if w0 == 0:
        return _count_shifted(F0, E0, w1, p) + _count_shifted(F1, E1, w1, p)
    if w1 != 0:
        return _count_shifted(F0, E1, w1, p) + _count_shifted(F1, E0, w1, p)
    return len(F0 & E1) + len(F1 & E0)


def assemble_crt_set(F0: Iterable[int], F1: Iterable[int], p: int) -> List[int]:
    """{0}×F0 ∪ {1}×F1 在 Z_2p 中的原像"""
    F0, F1 = set(x % p for x in F0), set(x % p for x in F1)
    return [t for t in range(2 * p) if (t % p) in (F0 if t % 2 == 0 else F1)]


@dataclass(frozen=True)
class ClassCount:
    count: int
    predicted: int

    @property
    def holds(self) -> bool:
        return self.count == self.predicted


def lemma2_counts(sys: CyclotomicSystem, j: int, l: int, u: int,
                  numbers: Optional[CyclotomicNumbers] = None) -> ClassCount:
    """
    |H_j ∩ (H_l + u)| 与分圆数 (h−l, j−l) 的对照，u ∈ H_h

    Returns:
        ClassCount: 实际计数与公式预测值
    """
    if u % sys.p == 0:
        raise DomainError(f"u = {u} ≡ 0 (mod {sys.p})")
    h = sys.class_of(u)
    numbers = numbers or cyclotomic_numbers(sys)
    count = _count_shifted(sys.classes[j % 4], sys.classes[l % 4], u, sys.p)
    return ClassCount(count=count, predicted=numbers(h - l, j - l))


def lemma2_singleton(sys: CyclotomicSystem, j: int, u: int) -> ClassCount:
    """|H_j ∩ {u}|，u ∈ H_h 时预测为 [h = j]"""
    if u % sys.p == 0:
        raise DomainError(f"u = {u} ≡ 0 (mod {sys.p})")
    count = int(u % sys.p in sys.classes[j % 4])
    return ClassCount(count=count, predicted=int(sys.class_of(u) == j % 4))


def lemma2_zero_membership(sys: CyclotomicSystem, j: int, u: int) -> ClassCount:
    """
    |{0} ∩ (H_j + u)| 与同余规则的对照

    规则：h = j 且 p ≡ 1 (mod 8)，或 h ≡ j + 2 (mod 4) 且 p ≡ 5 (mod 8) 时为 1。
    """
    if u % sys.p == 0:
        raise DomainError(f"u = {u} ≡ 0 (mod {sys.p})")
    h = sys.class_of(u)
    count = _count_shifted({0}, sys.classes[j % 4], u, sys.p)
    if sys.p % 8 == 1:
        predicted = int(h == j % 4)
    else:
        predicted = int(h == (j + 2) % 4)
    return ClassCount(count=count, predicted=predicted)


def minus_one_class(sys: CyclotomicSystem) -> int:
    """−1 = g^{(p−1)/2} 所在的类：p ≡ 1 (mod 8) 时为 0，p ≡ 5 (mod 8) 时为 2"""
    return sys.class_of(sys.p - 1)


def membership_mask(members: Iterable[int], size: int) -> np.ndarray:
    """集合的位图表示，O(1) 成员判断"""
    mask = np.zeros(size, dtype=bool)
    mask[np.asarray(list(members), dtype=np.int64)] = True
    return mask
