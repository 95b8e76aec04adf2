"""
A 型 Weyl 群 S_m

置换的长度、Bruhat 序、抛物子群与双陪集、最小陪集代表元，以及
Kazhdan-Lusztig 多项式（经典递推）和独立的 R-多项式反演校验。

约定:
    - 一行记号，值域为 1..m
    - 复合 (w·v)(i) = w(v(i))
    - 在坐标向量上的作用 (w·x)_i = x_{w⁻¹(i)}
    - 置换矩阵在 (w(k), k) 处为 1
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cache
from itertools import permutations

from .errors import ConsistencyError, LengthMismatchError, LiteralParseError
from .exactlin import Mat
from .logger import get_logger

logger = get_logger(__name__)

# 经典递推支持的最大秩（|S_5| = 120）
MAX_KL_RANK = 5


@dataclass(frozen=True, order=True)
class Perm:
    """一行记号下的置换"""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise LiteralParseError(f"不是 1..m 上的双射: {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Perm":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def simple(cls, i: int, m: int) -> "Perm":
        """单反射 s_i，交换 i 与 i+1"""
        if not 1 <= i < m:
            raise LiteralParseError(f"单反射下标越界: s_{i} 不在 S_{m} 中")
        images = list(range(1, m + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def longest(cls, m: int) -> "Perm":
        return cls(tuple(range(m, 0, -1)))

    @classmethod
    def from_word(cls, word: Iterable[int], m: int) -> "Perm":
        """由单反射字 s_{i1}…s_{ir} 构造置换"""
        result = cls.identity(m)
        for i in word:
            result = result * cls.simple(i, m)
        return result

    @classmethod
    def parse(cls, literal: str) -> "Perm":
        """
        解析逗号分隔的一行记号，例如 "3,1,4,2"

        Raises:
            LiteralParseError: 字面量格式错误
        """
        try:
            images = tuple(int(part) for part in literal.replace(" ", "").split(","))
        except ValueError as e:
            raise LiteralParseError(f"置换字面量格式错误: {literal!r}") from e
        return cls(images)

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.m
        for k, image in enumerate(self.images, start=1):
            inv[image - 1] = k
        return Perm(tuple(inv))

    def length(self) -> int:
        return length(self)

    def left_descents(self) -> set[int]:
        """满足 s_i·w < w 的 i"""
        inv = self.inverse()
        return {i for i in range(1, self.m) if inv(i) > inv(i + 1)}

    def right_descents(self) -> set[int]:
        """满足 w·s_i < w 的 i"""
        return {i for i in range(1, self.m) if self(i) > self(i + 1)}

    def act(self, vector: Sequence) -> tuple:
        """(w·x)_i = x_{w⁻¹(i)}"""
        inv = self.inverse()
        return tuple(vector[inv(i) - 1] for i in range(1, self.m + 1))

    def matrix(self) -> Mat:
        rows = [[0] * self.m for _ in range(self.m)]
        for k, image in enumerate(self.images):
            rows[image - 1][k] = 1
        return Mat.from_rows(rows, cols=self.m)

    def reduced_word(self) -> tuple[int, ...]:
        """
        最左约化字

        Returns:
            (i1, …, ir) 使得 w = s_{i1}…s_{ir} 且 r = ℓ(w)
        """
        word = []
        current = self
        while True:
            descents = current.left_descents()
            if not descents:
                break
            i = min(descents)
            word.append(i)
            current = Perm.simple(i, self.m) * current
        return tuple(word)

    def cycle_type(self) -> tuple[int, ...]:
        seen = set()
        lengths = []
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            size = 0
            k = start
            while k not in seen:
                seen.add(k)
                k = self(k)
                size += 1
            lengths.append(size)
        return tuple(sorted(lengths, reverse=True))


def length(w: Perm) -> int:
    """
    置换的长度（逆序数）

    Args:
        w: 置换

    Returns:
        逆序对个数
    """
    images = w.images
    return sum(
        1
        for i in range(len(images))
        for j in range(i + 1, len(images))
        if images[i] > images[j]
    )


def bruhat_leq(x: Perm, w: Perm) -> bool:
    """
    Bruhat 序判定（Ehresmann 表格判别法）

    x ≤ w 当且仅当对每个 k，x(1..k) 排序后逐项不超过 w(1..k) 排序后的对应项。
    该判别法与子字判别法等价，测试中对二者交叉校验。

    Args:
        x: 置换
        w: 置换

    Returns:
        x ≤ w 时为 True
    """
    if x.m != w.m:
        raise LengthMismatchError(f"置换大小不一致: {x.m} 与 {w.m}")
    for k in range(1, x.m):
        xs = sorted(x.images[:k])
        ws = sorted(w.images[:k])
        if any(a > b for a, b in zip(xs, ws)):
            return False
    return True


@cache
def all_perms(m: int) -> tuple[Perm, ...]:
    """S_m 的全部元素，按一行记号的字典序"""
    return tuple(Perm(p) for p in permutations(range(1, m + 1)))


@dataclass(frozen=True, order=True)
class ParabolicSet:
    """单反射下标子集 J ⊂ {1..m−1}，生成抛物子群 W_J"""

    simple_indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "simple_indices", tuple(sorted(set(self.simple_indices)))
        )

    @classmethod
    def parse(cls, literal: str) -> "ParabolicSet":
        """解析逗号分隔的下标列表，空串表示空集"""
        literal = literal.strip()
        if not literal:
            return cls()
        try:
            return cls(tuple(int(part) for part in literal.split(",")))
        except ValueError as e:
            raise LiteralParseError(f"单反射下标列表格式错误: {literal!r}") from e

    def __contains__(self, i: int) -> bool:
        return i in self.simple_indices

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.simple_indices) + "}"

    def validate(self, m: int) -> None:
        for i in self.simple_indices:
            if not 1 <= i < m:
                raise LiteralParseError(f"单反射下标 {i} 超出 1..{m - 1}")

    def blocks(self, m: int) -> list[list[int]]:
        """W_J 作用下 {1..m} 的连续块"""
        blocks = [[1]]
        for i in range(1, m):
            if i in self:
                blocks[-1].append(i + 1)
            else:
                blocks.append([i + 1])
        return blocks if m else []

    def elements(self, m: int) -> tuple[Perm, ...]:
        return parabolic_elements(self, m)


@cache
def parabolic_elements(j_set: ParabolicSet, m: int) -> tuple[Perm, ...]:
    """抛物子群 W_J 的全部元素（按字典序）"""
    gens = [Perm.simple(i, m) for i in j_set.simple_indices]
    seen = {Perm.identity(m)}
    frontier = [Perm.identity(m)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                v = w * s
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return tuple(sorted(seen))


@dataclass(frozen=True)
class DoubleCoset:
    """双陪集 W_left \\ W / W_right，以最长代表元标识"""

    left: ParabolicSet
    right: ParabolicSet
    longest_rep: Perm
    elements: frozenset[Perm] = field(compare=False, repr=False, default=frozenset())

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, w: Perm) -> bool:
        return w in self.elements


def _coset_elements(
    w: Perm, left: ParabolicSet, right: ParabolicSet
) -> frozenset[Perm]:
    return frozenset(
        a * w * b for a in left.elements(w.m) for b in right.elements(w.m)
    )


def longest_in_coset(w: Perm, left: ParabolicSet, right: ParabolicSet) -> Perm:
    """
    双陪集 W_left·w·W_right 中唯一的最长元

    Args:
        w: 任一代表元
        left: 左抛物集
        right: 右抛物集

    Returns:
        最长元
    """
    members = _coset_elements(w, left, right)
    best = max(members, key=lambda v: (length(v), v))
    top = length(best)
    if sum(1 for v in members if length(v) == top) != 1:
        raise ConsistencyError(f"双陪集中最长元不唯一: {w}")
    return best


def double_cosets(left: ParabolicSet, right: ParabolicSet, m: int) -> list[DoubleCoset]:
    """
    把 S_m 划分为双陪集

    Args:
        left: 左抛物集
        right: 右抛物集
        m: 置换大小

    Returns:
        双陪集列表，按最长代表元的字典序排列
    """
    left.validate(m)
    right.validate(m)
    assigned: set[Perm] = set()
    cosets = []
    for w in all_perms(m):
        if w in assigned:
            continue
        members = _coset_elements(w, left, right)
        assigned |= members
        cosets.append(
            DoubleCoset(left, right, longest_in_coset(w, left, right), members)
        )
    return sorted(cosets, key=lambda q: q.longest_rep)


def coset_containing(w: Perm, left: ParabolicSet, right: ParabolicSet) -> DoubleCoset:
    """包含 w 的双陪集"""
    return DoubleCoset(
        left, right, longest_in_coset(w, left, right), _coset_elements(w, left, right)
    )


def minimal_coset_reps(j_set: ParabolicSet, m: int) -> list[Perm]:
    """
    左陪集 W/W_J 的最小长度代表元

    u 是 uW_J 中最短元当且仅当对每个 j ∈ J 有 u(j) < u(j+1)。

    Returns:
        按 (长度, 字典序) 排列的代表元，单位元在首位
    """
    reps = [
        u
        for u in all_perms(m)
        if all(u(j) < u(j + 1) for j in j_set.simple_indices)
    ]
    return sorted(reps, key=lambda u: (length(u), u))


def class_representatives(m: int) -> list[Perm]:
    """每个共轭类（轮换型）取字典序最小的元素，按轮换型排序"""
    reps: dict[tuple[int, ...], Perm] = {}
    for w in all_perms(m):
        reps.setdefault(w.cycle_type(), w)
    return [reps[key] for key in sorted(reps)]


@dataclass(frozen=True)
class KLPoly:
    """
    q 的整系数多项式，系数按升幂排列

    同时承载 KL 多项式与 R-多项式；末尾的零系数被去除，零多项式为空元组。
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def one(cls) -> "KLPoly":
        return cls((1,))

    @classmethod
    def q_power(cls, k: int) -> "KLPoly":
        return cls((0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def at(self, q: int) -> int:
        return sum(c * q**k for k, c in enumerate(self.coefficients))

    def __add__(self, other: "KLPoly") -> "KLPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return KLPoly(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size))
        )

    def __neg__(self) -> "KLPoly":
        return KLPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "KLPoly") -> "KLPoly":
        return self + (-other)

    def __mul__(self, other: "KLPoly") -> "KLPoly":
        if self.is_zero() or other.is_zero():
            return KLPoly()
        result = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                result[i + j] += a * b
        return KLPoly(tuple(result))

    def truncate_below(self, bound: int) -> "KLPoly":
        """只保留次数严格小于 bound 的项"""
        return KLPoly(self.coefficients[: max(bound, 0)])

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) or "0"


def _check_rank(m: int) -> None:
    if m > MAX_KL_RANK:
        raise LiteralParseError(f"KL 计算只支持 m ≤ {MAX_KL_RANK}，收到 m={m}")


@cache
def _kl(x: Perm, w: Perm) -> KLPoly:
    if not bruhat_leq(x, w):
        return KLPoly()
    if x == w:
        return KLPoly.one()
    m = w.m
    i = min(w.left_descents())
    s = Perm.simple(i, m)
    v = s * w
    sx = s * x
    c = 1 if length(sx) < length(x) else 0
    result = KLPoly.q_power(1 - c) * _kl(sx, v) + KLPoly.q_power(c) * _kl(x, v)
    for z in all_perms(m):
        if z == v or not bruhat_leq(z, v) or not bruhat_leq(x, z):
            continue
        if length(s * z) > length(z):
            continue
        mu = mu_coefficient(z, v)
        if mu:
            shift = (length(w) - length(z)) // 2
            result = result - KLPoly((mu,)) * KLPoly.q_power(shift) * _kl(x, z)
    return result


def mu_coefficient(x: Perm, w: Perm) -> int:
    """
    μ(x, w)：P_{x,w} 中 q^{(ℓ(w)−ℓ(x)−1)/2} 的系数（长度差为偶数时为 0）
    """
    gap = length(w) - length(x)
    if gap <= 0 or gap % 2 == 0:
        return 0
    return _kl(x, w).coefficient((gap - 1) // 2)


def kl_polynomial(x: Perm, w: Perm) -> KLPoly:
    """
    Kazhdan-Lusztig 多项式 P_{x,w}

    经典递推：取 w 的左下降 s，v = s·w，

        P_{x,w} = q^{1−c} P_{sx,v} + q^c P_{x,v}
                  − Σ_{z<v, sz<z} μ(z,v) q^{(ℓ(w)−ℓ(z))/2} P_{x,z}

    其中 sx < x 时 c = 1，否则 c = 0。结果按 (x, w) 记忆化。

    Args:
        x: 置换
        w: 置换

    Returns:
        P_{x,w}；x ≰ w 时为零多项式

    Raises:
        LengthMismatchError: x 与 w 的大小不一致
        ConsistencyError: 出现负系数
    """
    if x.m != w.m:
        raise LengthMismatchError(f"置换大小不一致: {x.m} 与 {w.m}")
    _check_rank(w.m)
    poly = _kl(x, w)
    if any(c < 0 for c in poly.coefficients):
        raise ConsistencyError(f"KL 多项式出现负系数: P_{{{x},{w}}} = {poly}")
    return poly


@cache
def r_polynomial(x: Perm, w: Perm) -> KLPoly:
    """
    R-多项式 R_{x,w}

    取 w 的左下降 s：若 sx < x 则 R_{x,w} = R_{sx,sw}，
    否则 R_{x,w} = (q−1) R_{x,sw} + q R_{sx,sw}。
    """
    if not bruhat_leq(x, w):
        return KLPoly()
    if x == w:
        return KLPoly.one()
    i = min(w.left_descents())
    s = Perm.simple(i, w.m)
    sx = s * x
    sw = s * w
    if length(sx) < length(x):
        return r_polynomial(sx, sw)
    return KLPoly((-1, 1)) * r_polynomial(x, sw) + KLPoly.q_power(1) * r_polynomial(
        sx, sw
    )


@cache
def kl_polynomial_via_r(x: Perm, w: Perm) -> KLPoly:
    """
    由 R-多项式反演得到的 P_{x,w}，作为经典递推的独立校验

    q^{ℓ(w)−ℓ(x)} P_{x,w}(q⁻¹) − P_{x,w}(q) = Σ_{x<y≤w} R_{x,y} P_{y,w}，
    右端次数小于 (ℓ(w)−ℓ(x))/2 的部分取负即为 P_{x,w}。
    """
    if not bruhat_leq(x, w):
        return KLPoly()
    if x == w:
        return KLPoly.one()
    total = KLPoly()
    for y in all_perms(w.m):
        if y != x and bruhat_leq(x, y) and bruhat_leq(y, w):
            total = total + r_polynomial(x, y) * kl_polynomial_via_r(y, w)
    gap = length(w) - length(x)
    # 次数 < gap/2 即次数 ≤ (gap−1)/2
    return -total.truncate_below((gap + 1) // 2)


def kl_table_size(m: int) -> int:
    """S_m 中可比较对的个数"""
    perms = all_perms(m)
    count = sum(1 for x in perms for w in perms if bruhat_leq(x, w))
    logger.debug("S_%d 中可比较对个数: %d", m, count)
    return count
