"""
精确算术底层

Z4、GF(4)、GF(4^m) / GF(2^r) 扩域、高斯整数，以及这些环上的稠密多项式。
GF(2)、GF(4) 及其多项式直接使用 galois；高斯整数使用 sympy 的 ZZ_I。
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import galois
import numpy as np
from sympy import ZZ_I

from src.core.errors import DomainError, InternalError, PreconditionError

GF2 = galois.GF(2)
GF4 = galois.GF(4)

# galois 的 GF(4) 整数表示为多项式基 (b1, b0) -> 2*b1 + b0，其中 2 即 μ，满足 μ^2 = μ + 1
MU = 2
MU_PLUS_ONE = 3

GF4_MUL = np.array([[int(GF4(a) * GF4(b)) for b in range(4)] for a in range(4)], dtype=np.uint8)
GF4_INV = np.array([0] + [int(GF4(1) / GF4(a)) for a in range(1, 4)], dtype=np.uint8)

Z4_UNITS = (1, 3)


class PolyDegree(Enum):
    """零多项式的次数标记，不参与整数运算"""
    NEG_INFINITY = "-inf"


Degree = Union[int, PolyDegree]


# ---------------------------------------------------------------------------
# GF(4)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GF4Element:
    """GF(4) 元素，value = 2*b1 + b0 表示 b1·μ + b0"""
    value: int

    def __post_init__(self):
        if self.value not in (0, 1, 2, 3):
            raise DomainError(f"GF(4) 元素必须在 0..3 之间: {self.value}")

    @classmethod
    def from_bits(cls, b1: int, b0: int) -> "GF4Element":
        return cls(((b1 & 1) << 1) | (b0 & 1))

    @property
    def bits(self) -> Tuple[int, int]:
        return self.value >> 1, self.value & 1

    def __add__(self, other: "GF4Element") -> "GF4Element":
        return GF4Element(self.value ^ other.value)

    def __mul__(self, other: "GF4Element") -> "GF4Element":
        return GF4Element(int(GF4_MUL[self.value, other.value]))

    def inverse(self) -> "GF4Element":
        if self.value == 0:
            raise DomainError("GF(4) 中零元没有逆元")
        return GF4Element(int(GF4_INV[self.value]))

    def __str__(self) -> str:
        return ("0", "1", "μ", "μ+1")[self.value]


def gf4_arith(a: GF4Element, b: GF4Element, op: str) -> GF4Element:
    """
    GF(4) 表驱动运算

    Args:
        a: 左操作数
        b: 右操作数（op 为 inv 时忽略）
        op: add / mul / inv

    Returns:
        GF4Element: 运算结果
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise DomainError(f"未知的 GF(4) 运算: {op}")


# ---------------------------------------------------------------------------
# Z4
# ---------------------------------------------------------------------------

def is_z4_unit(a: int) -> bool:
    return a % 4 in Z4_UNITS


def z4_inverse(a: int) -> int:
    """Z4 中单位的逆元（1、3 都是自逆的）"""
    if not is_z4_unit(a):
        raise DomainError(f"{a % 4} 在 Z4 中不可逆")
    return a % 4


@dataclass(frozen=True)
class Z4Poly:
    """Z4 上的稠密多项式，coeffs 为升幂系数且已去掉末尾零"""
    coeffs: Tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Z4Poly":
        values = [int(c) % 4 for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        return cls(tuple(values))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Degree:
        if self.is_zero:
            return PolyDegree.NEG_INFINITY
        return len(self.coeffs) - 1

    def __add__(self, other: "Z4Poly") -> "Z4Poly":
        size = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(size, dtype=np.int64)
        a[:len(self.coeffs)] += np.asarray(self.coeffs, dtype=np.int64)
        a[:len(other.coeffs)] += np.asarray(other.coeffs, dtype=np.int64)
        return Z4Poly.from_coeffs(a)

    def __mul__(self, other: "Z4Poly") -> "Z4Poly":
        if self.is_zero or other.is_zero:
            return Z4Poly(())
        return Z4Poly.from_coeffs(np.convolve(self.coeffs, other.coeffs))

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % 4
        return acc

    def mod_xn_minus_one(self, n: int) -> "Z4Poly":
        """模 x^n - 1 约化（指数按 n 折叠）"""
        folded = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            folded[i % n] += c
        return Z4Poly.from_coeffs(folded)

    def divmod_monic(self, divisor: "Z4Poly") -> Tuple["Z4Poly", "Z4Poly"]:
        """
        除以首一多项式的带余除法

        Z4 不是域，只有首项为单位时长除法才有定义；这里要求首一。
        """
        if divisor.is_zero or divisor.coeffs[-1] != 1:
            raise DomainError("Z4 上的带余除法要求除式首一")
        rem = list(self.coeffs)
        d = len(divisor.coeffs) - 1
        quot = [0] * max(len(rem) - d, 1)
        for shift in range(len(rem) - 1 - d, -1, -1):
            lead = rem[shift + d] % 4
            if lead:
                quot[shift] = lead
                for i, c in enumerate(divisor.coeffs):
                    rem[shift + i] = (rem[shift + i] - lead * c) % 4
        return Z4Poly.from_coeffs(quot), Z4Poly.from_coeffs(rem[:d] if d else [])


# ---------------------------------------------------------------------------
# 高斯整数
# ---------------------------------------------------------------------------

GaussianInt = type(ZZ_I(0, 0))

I_POWERS = (ZZ_I(1, 0), ZZ_I(0, 1), ZZ_I(-1, 0), ZZ_I(0, -1))


def gaussian(re: int, im: int = 0) -> GaussianInt:
    return ZZ_I(int(re), int(im))


def i_power(k: int) -> GaussianInt:
    """i^k，k 按模 4 取值"""
    return I_POWERS[k % 4]


def gaussian_parts(z: GaussianInt) -> Tuple[int, int]:
    return int(z.x), int(z.y)


def conjugate(z: GaussianInt) -> GaussianInt:
    return ZZ_I(z.x, -z.y)


def norm_sq(z: GaussianInt) -> int:
    re, im = gaussian_parts(z)
    return re * re + im * im


def gaussian_str(z: GaussianInt) -> str:
    """规范字符串，例如 -2+2i、-2i、0"""
    re, im = gaussian_parts(z)
    if im == 0:
        return str(re)
    imag = {1: "i", -1: "-i"}.get(im, f"{im}i")
    if re == 0:
        return imag
    return f"{re}{'+' if im > 0 else ''}{imag}"


# ---------------------------------------------------------------------------
# GF(2)/GF(4) 上的多项式（galois.Poly）
# ---------------------------------------------------------------------------

def poly_from_coeffs(coeffs: Sequence[int], field=GF4) -> galois.Poly:
    """由升幂系数构造多项式"""
    values = [int(c) for c in coeffs] or [0]
    return galois.Poly(values, field=field, order="asc")


def poly_coeffs(f: galois.Poly) -> List[int]:
    """多项式的升幂系数（零多项式返回空列表）"""
    if is_zero_poly(f):
        return []
    return [int(c) for c in f.coeffs[::-1]]


def is_zero_poly(f: galois.Poly) -> bool:
    return f.degree == 0 and int(f.coeffs[0]) == 0


def poly_degree(f: galois.Poly) -> Degree:
    if is_zero_poly(f):
        return PolyDegree.NEG_INFINITY
    return f.degree


def x_pow_minus_one(n: int, field=GF4) -> galois.Poly:
    """x^n - 1（特征 2 下即 x^n + 1）"""
    return galois.Poly.Degrees([n, 0], coeffs=[1, field.characteristic - 1], field=field)


def make_monic(f: galois.Poly) -> galois.Poly:
    lead = galois.Poly(f.coeffs[:1], field=f.field)
    return f // lead


def poly_gcd_f4(a: galois.Poly, b: galois.Poly) -> galois.Poly:
    """
    GF(4) 上多项式的首一最大公因式

    Args:
        a: 多项式
        b: 多项式

    Returns:
        galois.Poly: 首一 gcd
    """
    if is_zero_poly(a) and is_zero_poly(b):
        raise DomainError("gcd(0, 0) 没有定义")
    if is_zero_poly(b):
        return make_monic(a)
    if is_zero_poly(a):
        return make_monic(b)
    return make_monic(galois.gcd(a, b))


# ---------------------------------------------------------------------------
# 扩域 GF(q^m)，q ∈ {2, 4}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtFieldElement:
    """扩域元素：模不可约多项式的剩余类，coeffs 为长度 m 的升幂系数"""
    ext: "ExtensionField" = field(compare=False, repr=False)
    coeffs: Tuple[int, ...]

    def __add__(self, other: "ExtFieldElement") -> "ExtFieldElement":
        return self.ext.add(self, other)

    def __mul__(self, other: "ExtFieldElement") -> "ExtFieldElement":
        return self.ext.mul(self, other)

    def __pow__(self, exponent: int) -> "ExtFieldElement":
        return self.ext.power(self, exponent)

    def scale(self, scalar: int) -> "ExtFieldElement":
        """乘以基域标量"""
        return self.ext.scale(self, scalar)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])


class ExtensionField:
    """GF(q)[x]/(f) ，f 为 galois 顺序搜索得到的最小 m 次不可约多项式"""

    def __init__(self, q: int, m: int):
        if q not in (2, 4):
            raise DomainError(f"基域阶只支持 2 或 4: {q}")
        if m < 1:
            raise DomainError(f"扩张次数必须为正整数: {m}")
        self.q = q
        self.m = m
        self.base = GF4 if q == 4 else GF2
        self.modulus = galois.irreducible_poly(q, m, method="min")
        if self.modulus.degree != m:
            raise InternalError(f"未找到 GF({q}) 上的 {m} 次不可约多项式")
        self.order = q ** m

    def __repr__(self) -> str:
        return f"ExtensionField(q={self.q}, m={self.m}, modulus={self.modulus})"

    def _from_poly(self, f: galois.Poly) -> ExtFieldElement:
        values = poly_coeffs(f % self.modulus)
        values += [0] * (self.m - len(values))
        return ExtFieldElement(self, tuple(values))

    def _to_poly(self, a: ExtFieldElement) -> galois.Poly:
        return poly_from_coeffs(a.coeffs, field=self.base)

    def element(self, coeffs: Sequence[int]) -> ExtFieldElement:
        return self._from_poly(poly_from_coeffs([c % self.q for c in coeffs], field=self.base))

    @property
    def zero(self) -> ExtFieldElement:
        return ExtFieldElement(self, (0,) * self.m)

    @property
    def one(self) -> ExtFieldElement:
        return ExtFieldElement(self, (1,) + (0,) * (self.m - 1))

    def draw(self, rng: np.random.Generator) -> ExtFieldElement:
        return ExtFieldElement(self, tuple(int(c) for c in rng.integers(0, self.q, size=self.m)))

    def add(self, a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
        # 特征 2，系数加法即按位异或
        return ExtFieldElement(self, tuple(x ^ y for x, y in zip(a.coeffs, b.coeffs)))

    def mul(self, a: ExtFieldElement, b: ExtFieldElement) -> ExtFieldElement:
        return self._from_poly(self._to_poly(a) * self._to_poly(b))

    def scale(self, a: ExtFieldElement, scalar: int) -> ExtFieldElement:
        return ExtFieldElement(self, tuple(int(GF4_MUL[scalar % self.q, c]) for c in a.coeffs))

    def power(self, a: ExtFieldElement, exponent: int) -> ExtFieldElement:
        """平方-乘算法，指数为任意精度非负整数"""
        if exponent < 0:
            raise DomainError("扩域幂运算只接受非负指数")
        result = self.one
        square = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, square)
            square = self.mul(square, square)
            exponent >>= 1
        return result

    def power_table(self, a: ExtFieldElement, count: int) -> np.ndarray:
        """a^0 .. a^(count-1) 的系数表，形状 (count, m)"""
        table = np.zeros((count, self.m), dtype=np.uint8)
        current = self.one
        for e in range(count):
            table[e] = current.coeffs
            current = self.mul(current, a)
        return table

    def combine(self, weights: np.ndarray, table: np.ndarray) -> ExtFieldElement:
        """Σ weights[e] · table[e]，weights 取值于基域"""
        weights = np.asarray(weights, dtype=np.uint8) % self.q
        terms = GF4_MUL[weights[:, None], table]
        summed = np.bitwise_xor.reduce(terms, axis=0) if len(terms) else np.zeros(self.m, dtype=np.uint8)
        return ExtFieldElement(self, tuple(int(c) for c in summed))


@lru_cache(maxsize=None)
def build_ext_field(q: int, m: int) -> ExtensionField:
    """
    构造扩域 GF(q^m)

    Args:
        q: 基域阶（2 或 4）
        m: 扩张次数

    Returns:
        ExtensionField: 域句柄，同一 (q, m) 复用同一个实例
    """
    return ExtensionField(q, m)


def find_root_of_unity(ext: ExtensionField, p: int, rng: np.random.Generator,
                       max_attempts: int = 1000) -> ExtFieldElement:
    """
    在扩域中寻找 p 次单位根 α（α^p = 1, α ≠ 1）

    Args:
        ext: 扩域句柄
        p: 素数阶
        rng: 随机数发生器（由种子决定，保证可复现）
        max_attempts: 最大抽取次数

    Returns:
        ExtFieldElement: 阶为 p 的元素
    """
    if (ext.order - 1) % p:
        raise PreconditionError(f"{p} 不整除 {ext.q}^{ext.m} - 1，GF({ext.q}^{ext.m}) 中不存在 {p} 阶元素")
    exponent = (ext.order - 1) // p
    for _ in range(max_attempts):
        zeta = ext.draw(rng)
        if zeta.is_zero:
            continue
        alpha = ext.power(zeta, exponent)
        if not alpha.is_one:
            return alpha
    raise InternalError(f"抽取 {max_attempts} 次仍未找到 {p} 阶元素")
