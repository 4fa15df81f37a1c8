"""Interval audit of the explicit numeric constants behind the bounds.

Each catalog item is a closed-form real expression compared with a claimed
rational.  Items whose expression is rational are decided exactly; the rest
are enclosed at increasing precision until the comparison is decided.
"""

from __future__ import annotations

import ast
import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

import gmpy2

from .errors import DomainError, NotFound, ParseError, UnsupportedFormat
from .numerics import Interval, e, euler_gamma, pi

LADDER = (256, 512, 1024)
CSV_FIELDS = ("id", "status", "lhs_lo", "lhs_hi", "rhs", "slack_lo", "slack_hi", "anchor")
STATUSES = ("verified", "refuted", "undecided-at-precision", "assumed", "assembly-unverifiable")


# ---------------------------------------------------------------- expressions


class Expr:
    """Closed real expression; subclasses implement ``evaluate`` and ``exact``."""

    def evaluate(self, prec: int) -> Interval:
        raise NotImplementedError

    def exact(self) -> Fraction | None:
        """Exact value when the expression is rational by construction."""
        return None

    def __add__(self, o): return Bin("+", self, lift(o))
    def __radd__(self, o): return Bin("+", lift(o), self)
    def __sub__(self, o): return Bin("-", self, lift(o))
    def __rsub__(self, o): return Bin("-", lift(o), self)
    def __mul__(self, o): return Bin("*", self, lift(o))
    def __rmul__(self, o): return Bin("*", lift(o), self)
    def __truediv__(self, o): return Bin("/", self, lift(o))
    def __rtruediv__(self, o): return Bin("/", lift(o), self)
    def __pow__(self, o): return Bin("^", self, lift(o))
    def __rpow__(self, o): return Bin("^", lift(o), self)
    def __neg__(self): return Bin("-", Num(Fraction(0)), self)


@dataclass(frozen=True, eq=True)
class Num(Expr):
    value: Fraction

    def evaluate(self, prec):
        return Interval(self.value, prec=prec)

    def exact(self):
        return self.value

    def __str__(self):
        v = self.value
        if v.denominator == 1:
            return str(v.numerator) if v >= 0 else f"({v.numerator})"
        return f"({v.numerator}/{v.denominator})"


_CONSTANTS = {"e": e, "pi": pi, "gamma0": euler_gamma}


@dataclass(frozen=True, eq=True)
class Const(Expr):
    name: str

    def evaluate(self, prec):
        return _CONSTANTS[self.name](prec)

    def __str__(self):
        return self.name


_UNARY = {"ln": Interval.log, "exp": Interval.exp, "sqrt": Interval.sqrt}


@dataclass(frozen=True, eq=True)
class Fn(Expr):
    name: str
    arg: Expr

    def evaluate(self, prec):
        return _UNARY[self.name](self.arg.evaluate(prec))

    def exact(self):
        v = self.arg.exact()
        if v is None:
            return None
        if self.name == "ln" and v == 1:
            return Fraction(0)
        if self.name == "exp" and v == 0:
            return Fraction(1)
        if self.name == "sqrt" and v >= 0:
            n, d = gmpy2.iroot(v.numerator, 2), gmpy2.iroot(v.denominator, 2)
            if n[1] and d[1]:
                return Fraction(int(n[0]), int(d[0]))
        return None

    def __str__(self):
        return f"{self.name}({self.arg})"


@dataclass(frozen=True, eq=True)
class Bin(Expr):
    op: str
    a: Expr
    b: Expr

    def evaluate(self, prec):
        b_exact = self.b.exact()
        x = self.a.evaluate(prec)
        if self.op == "^" and b_exact is not None and b_exact.denominator == 1:
            return x ** int(b_exact)
        y = self.b.evaluate(prec)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        if self.op == "/":
            try:
                return x / y
            except ZeroDivisionError as exc:
                raise DomainError(f"division by an enclosure of zero in {self}") from exc
        if x.lo <= 0:
            raise DomainError(f"non-integer power of a non-positive base in {self}")
        return x.rpow(y)

    def exact(self):
        a, b = self.a.exact(), self.b.exact()
        if a is None or b is None:
            return None
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            if b == 0:
                raise DomainError("division by zero")
            return a / b
        if b.denominator == 1:
            if a == 0 and b < 0:
                raise DomainError("division by zero")
            return a ** int(b)
        return None

    def __str__(self):
        return f"({self.a} {self.op} {self.b})"


def lift(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Num(Fraction(v))
    if isinstance(v, str):
        return Num(Fraction(v))
    raise TypeError(f"cannot build an expression from {type(v).__name__}")


def ln(x) -> Expr: return Fn("ln", lift(x))
def exp(x) -> Expr: return Fn("exp", lift(x))
def sqrt(x) -> Expr: return Fn("sqrt", lift(x))
def Q(n, d=1) -> Expr: return Num(Fraction(n, d))


E, PI, GAMMA0 = Const("e"), Const("pi"), Const("gamma0")

_NAMES = {"e": E, "pi": PI, "gamma0": GAMMA0, "gamma": GAMMA0}
_FUNCS = {"ln": "ln", "log": "ln", "exp": "exp", "sqrt": "sqrt"}
_BINOPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/", ast.Pow: "^"}


def parse_expr(text: str) -> Expr:
    """Parse numbers, e, pi, gamma0, ln/exp/sqrt and + - * / ^ into an expression.

    Decimal literals are read exactly.

    >>> str(parse_expr("4*e*ln(3)/ln(2)"))
    '(((4 * e) * ln(3)) / ln(2))'
    """
    # ^ is exponentiation here, with Python's ** precedence
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse expression {text!r}: {exc.msg}") from exc

    def walk(node) -> Expr:
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            seg = ast.get_source_segment(src, node) or repr(node.value)
            try:
                return Num(Fraction(seg))
            except ValueError as exc:
                raise ParseError(f"bad number {seg!r}") from exc
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            if isinstance(node.op, ast.UAdd):
                return inner
            if isinstance(inner, Num):
                return Num(-inner.value)
            return -inner
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return Bin(_BINOPS[type(node.op)], walk(node.left), walk(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords:
            return Fn(_FUNCS[node.func.id], walk(node.args[0]))
        raise ParseError(f"unsupported syntax in {text!r}: {ast.dump(node)[:60]}")

    return walk(tree.body)


# ---------------------------------------------------------------- items and reports


@dataclass(frozen=True)
class AuditItem:
    id: str
    lhs: Expr | None
    relation: Literal["<=", ">="]
    rhs: Fraction
    anchor: str
    kind: Literal["check", "assumed", "assembly"] = "check"
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    id: str
    status: str
    lhs: Interval | None
    rhs: Fraction
    slack: Interval | None  # positive when the claimed relation holds
    anchor: str
    precision: int

    @property
    def decided(self) -> bool:
        return self.status in ("verified", "refuted")


def _classify(item: AuditItem, prec: int) -> AuditReport:
    if item.kind == "assembly" or item.lhs is None:
        return AuditReport(item.id, "assembly-unverifiable", None, item.rhs, None, item.anchor, prec)
    exact = item.lhs.exact()
    if exact is not None:
        lhs = Interval(exact, prec=prec)
        diff = item.rhs - exact if item.relation == "<=" else exact - item.rhs
        slack = Interval(diff, prec=prec)
        status = "verified" if diff >= 0 else "refuted"
    else:
        lhs = item.lhs.evaluate(prec)
        r = Interval(item.rhs, prec=prec)
        slack = r - lhs if item.relation == "<=" else lhs - r
        if slack.lo >= 0:
            status = "verified"
        elif slack.hi < 0:
            status = "refuted"
        else:
            status = "undecided-at-precision"
    if item.kind == "assumed":
        status = "assumed"
    return AuditReport(item.id, status, lhs, item.rhs, slack, item.anchor, prec)


def audit_item(item: AuditItem, precision: int = LADDER[0], escalate: bool = True) -> AuditReport:
    rep = _classify(item, precision)
    if escalate:
        for p in LADDER:
            if rep.status != "undecided-at-precision":
                break
            if p > precision:
                rep = _classify(item, p)
    return rep


def run_audit(items: Sequence[AuditItem] | None = None, precision: int = LADDER[0],
              escalate: bool = True, threads: int = 1) -> list[AuditReport]:
    """Classify every item; reports come back sorted by id."""
    if precision < 64:
        raise DomainError("audit precision must be at least 64 bits")
    items = catalog() if items is None else list(items)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            reps = list(ex.map(lambda it: audit_item(it, precision, escalate), items))
    else:
        reps = [audit_item(it, precision, escalate) for it in items]
    return sorted(reps, key=lambda r: r.id)


def select(ids: Iterable[str], items: Sequence[AuditItem] | None = None) -> list[AuditItem]:
    table = {it.id: it for it in (catalog() if items is None else items)}
    out = []
    for i in ids:
        if i not in table:
            raise NotFound(f"no audit item {i!r}")
        out.append(table[i])
    return out


# ---------------------------------------------------------------- rendering


def _num(x) -> str:
    return "" if x is None else str(x)


def _row(r: AuditReport) -> dict:
    return {
        "id": r.id,
        "status": r.status,
        "lhs_lo": _num(r.lhs and r.lhs.lo),
        "lhs_hi": _num(r.lhs and r.lhs.hi),
        "rhs": str(r.rhs),
        "slack_lo": _num(r.slack and r.slack.lo),
        "slack_hi": _num(r.slack and r.slack.hi),
        "anchor": r.anchor,
    }


def render_audit(reports: Sequence[AuditReport], fmt: str = "csv") -> str:
    """CSV, JSON or a text table; numbers are exact decimal images of the MPFR endpoints."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in reports:
            w.writerow(_row(r))
        return buf.getvalue()
    if fmt == "json":
        rows = [dict(_row(r), precision=r.precision, schema=1) for r in reports]
        return json.dumps(rows, indent=1, ensure_ascii=False) + "\n"
    if fmt == "text":
        lines = [f"{'id':<20} {'status':<24} {'lhs':<44} {'rhs':<24} slack"]
        for r in reports:
            lhs = r.lhs.format(12) if r.lhs is not None else "-"
            slack = r.slack.format(6) if r.slack is not None else "-"
            lines.append(f"{r.id:<20} {r.status:<24} {lhs:<44} {str(r.rhs):<24} {slack}")
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _interval(lo: str, hi: str, prec: int) -> Interval | None:
    if not lo:
        return None
    return Interval(gmpy2.mpfr(lo, prec), gmpy2.mpfr(hi, prec), prec=prec)


def parse_audit(text: str, fmt: str = "csv", precision: int = LADDER[0]) -> list[AuditReport]:
    """Inverse of ``render_audit`` for the machine formats.

    CSV carries no precision column, so endpoints are read at ``precision``.
    """
    if fmt == "csv":
        lines = [ln_ for ln_ in text.splitlines() if not ln_.startswith("#")]
        rows = list(csv.DictReader(io.StringIO("\n".join(lines) + "\n")))
        precs = [precision] * len(rows)
    elif fmt == "json":
        rows = json.loads(text)
        if isinstance(rows, dict):
            rows = rows["reports"]
        precs = [int(r["precision"]) for r in rows]
    else:
        raise UnsupportedFormat(f"cannot parse format {fmt!r}")
    out = []
    for r, p in zip(rows, precs):
        if r["status"] not in STATUSES:
            raise ParseError(f"unknown status {r['status']!r}")
        out.append(AuditReport(r["id"], r["status"], _interval(r["lhs_lo"], r["lhs_hi"], p),
                               Fraction(r["rhs"]), _interval(r["slack_lo"], r["slack_hi"], p),
                               r["anchor"], p))
    return out


# ---------------------------------------------------------------- catalog


def _chk(id, lhs, rhs, anchor, relation="<=", **kw) -> AuditItem:
    return AuditItem(id, lift(lhs), relation, Fraction(rhs), anchor, **kw)


def catalog() -> list[AuditItem]:
    """Every audited constant, in a fixed order."""
    L2, L3 = ln(2), ln(3)
    s3 = 8 * E ** 2 / Q(3) ** (1 + 1 / L2) + E / (ln(Q(5, 4)) * L2)
    dig_pi2 = ln(PI / 2)
    nchi = L3 + Q(1075, 134)
    items = [
        # truncated Perron formula
        _chk("s2_69_4", 4 * E * L3 / L2, Fraction(69, 4), r"\frac{69}{4}n_K \ln(x)"),
        _chk("s3_65_3", s3, Fraction(65, 3), r"\frac{65}{3}n_K T^{-1} x (\ln(x))^2"),
        _chk("r1_73_4", Q(69, 4) + 1, Fraction(73, 4), r"\frac{73}{4}n_K\ln(x)"),
        _chk("r1_145_6", s3 + (1 + 1 / L2) / (2 * L2 ** 2), Fraction(145, 6),
             r"\frac{145}{6}n_KT^{-1}x(\ln(x))^2"),
        # digamma and Gamma factors
        _chk("dig_827_36", ln(33) + PI / 2 + Q(4, 7) + 16 + Q(4, 3), Fraction(827, 36),
             r"\ln(|z|)+{\frac {827}{36}}"),
        _chk("dig_164_7", dig_pi2 + Q(827, 36), Fraction(164, 7),
             r"\ln(1+|s|)+{\frac {164}{7}}"),
        _chk("dig_405_134", dig_pi2 + PI / 2 + 1, Fraction(405, 134),
             r"\ln\left(|t|+\sigma+1\right)+\frac{405}{134}"),
        _chk("dig_539_134", dig_pi2 + PI / 2 + 2, Fraction(539, 134),
             r"\left(\ln(3)+\frac{539}{134}\right)"),
        _chk("dig_83_5", ln(9) + ln(sqrt(5)) + PI / 2 + 12, Fraction(83, 5),
             r"\ln(|z|)+\frac{83}{5}"),
        _chk("dig_989_58", dig_pi2 + Q(83, 5), Fraction(989, 58),
             r"\ln(1+|z|)+\frac{989}{58}"),
        # zero counting and L'/L
        _chk("nchi_673_134", Q(405, 134) + 2, Fraction(673, 134),
             r"n_E\left(\ln(|t|+3)+\frac{673}{134}\right)"),
        _chk("nchi_1075_134", Q(673, 134) + 3, Fraction(1075, 134),
             r"n_E\left(\ln(|t|+3)+\frac{1075}{134}\right)"),
        _chk("ll_24811_1876", (Q(164, 7) + Q(405, 134)) / 2, Fraction(24811, 1876),
             r"\ln(|t|+4)+\frac{24811}{1876}"),
        _chk("ll_50096_255", Q(24811, 1876) + Q(1075, 134) * (Q(5, 4) + 35 * PI ** 2 / 16),
             Fraction(50096, 255),
             r"\frac{24811}{1876}+\frac{1075}{134}\left(\frac{5}{4}+\frac{35\pi^2}{16}\right)"
             r"\leq \frac {50096}{255}"),
        _chk("ll_571_25", Q(5, 4) * (1 + 7 * PI ** 2 / 4), Fraction(571, 25),
             r"\frac {571}{25}\ln(A(\chi))"),
        _chk("fe_19683_812", Q(16435, 812) + 4, Fraction(19683, 812),
             r"\ln(|s|+2)+\frac{19683}{812}"),
        _chk("bchi_1790_157", Q(5, 4) * nchi, Fraction(1790, 157),
             r"\frac{1790}{157\varepsilon}"),
        _chk("bchi_10842_107",
             5 * (Q(1075, 1072) * (PI ** 2 + 4) + Q(13, 8) * ln(5) + L3 / 2)
             + Q(5, 4) * nchi + Q(3, 2) + (L3 + Q(673, 134)) / 2,
             Fraction(10842, 107), r"\frac {10842}{107}"),
        _chk("hm_8945_9", 5 * (1 + nchi / ln(PI / 3)), Fraction(8945, 9),
             r"\frac{8945}{9}(\sqrt{x}+1)(\ln(d_L))^2"),
        # explicit formula
        _chk("ef_94_7", 5 * PI ** 2 / 8 + Q(29, 4), Fraction(94, 7),
             r"\left(\frac{5\pi^2}{8}+\frac{29}{4}\right)\ln(A(\chi))"),
        _chk("ef_2102053_16799", Q(10842, 107) + Q(3580, 157) + 1, Fraction(2102053, 16799),
             r"\frac {2102053}{16799}"),
        _chk("ef_3817_30", Q(2102053, 16799) + ln(PI) / 2 + GAMMA0 / 2 + L2 + L3 / 2,
             Fraction(3817, 30), r"\frac{94}{7}\ln(d_L) + \frac{3817}{30}n_L"),
        _chk("ef_77_4", Q(73, 4) + 1, Fraction(77, 4),
             r"\frac{2}{\ln(2)}\ln(d_L)+\frac{77}{4}n_L"),
        _chk("tr_5921_28", Q(50096, 255) + Q(53, 6) + Q(35, 12) * ln(7), Fraction(5921, 28),
             r"\frac{57}{2}\ln(T+5)+\frac{5921}{28}"),
        # GRH psi bound
        _chk("grh_23_3", 65 * E / (8 * PI) + Q(5, 8), Fraction(23, 3),
             r"\left(\frac{23}{3}+\frac{4781}{96\ln(x)}\right)\ln(d_L)"),
        _chk("grh_29_3", 5 + Q(5, 2) * (E / PI + 1), Fraction(29, 3),
             r"\frac{23}{3}\ln(x)+\frac{29}{3}"),
        _chk("grh_336_17", E / PI * Q(571, 25), Fraction(336, 17), r"\frac{336}{17\ln(x)}"),
        _chk("grh_863_31", Q(145, 6) + 65 * E / (16 * PI) + Q(5, 32), Fraction(863, 31),
             r"\frac{863}{31}\ln(x)"),
        _chk("grh_362_15", Q(68, 3) + Q(22, 15), Fraction(362, 15),
             r"\frac{863}{31}\ln(x)+\frac{362}{15}"),
        _chk("theta_22_15", Q(22, 15), Fraction(22, 15),
             r"\frac{22}{15}n_K\sqrt{x}\ln(x)", kind="assumed",
             note="prime-power tail constant taken as stated"),
        _chk("ros_101624", Q(12703, 12500), Fraction(12703, 12500),
             r"< 1,01624n_K x", kind="assumed", note="external Chebyshev-type estimate"),
        AuditItem("grh_68_3", None, "<=", Fraction(68, 3),
                  r"\frac{863}{31}\ln(x)+\frac{68}{3}+\frac{58681}{113\ln(x)}", "assembly"),
        AuditItem("grh_4781_96", None, "<=", Fraction(4781, 96),
                  r"\frac{4781}{96\ln(x)}", "assembly"),
        AuditItem("grh_58681_113", None, "<=", Fraction(58681, 113),
                  r"\frac{58681}{113\ln(x)}", "assembly"),
        AuditItem("grh_1198_13", None, "<=", Fraction(1198, 13),
                  r"\frac{68}{3}\ln(x)+\frac{1198}{13}+\frac{1343}{6\ln(x)}", "assembly"),
        AuditItem("grh_1343_6", None, "<=", Fraction(1343, 6),
                  r"\frac{1343}{6\ln(x)}", "assembly"),
        AuditItem("grh_1647_5", None, "<=", Fraction(1647, 5),
                  r"\frac{1647}{5\ln\left(\frac{\pi}{3}\right)}", "assembly"),
        # unconditional theorem
        _chk("fin_a_exponent", Q(44, 5) * Q(15, 44), 3, r"a =\exp\left(\frac{15}{44}\right)"),
        _chk("fin_1078_67", 4 * Q(539, 134), Fraction(1078, 67),
             r"\frac{5}{2}\ln(|\gamma|+3)+\frac{1078}{67}+2\ln(3)"),
        _chk("fin_b_exponent", Q(2, 5) * Q(1078, 67), Fraction(2156, 335),
             r"b=3^{\frac{4}{5}}\exp\left(\frac{2156}{335}\right)"),
        _chk("fin_150867", 5 * Q(3) ** Q(4, 5) * exp(Q(2156, 335) + 3), 150867,
             r"\ln(150867d_L^{44/5})"),
        _chk("fin_1_99", (7 - 4 * sqrt(3)) / (5 * sqrt(2)), Fraction(1, 99),
             r"\exp\left(-\frac{1}{99} \sqrt{\frac{\ln(x)}{n_L}}\right)", relation=">="),
        _chk("fin_4607_10", 2 + (2 * Q(1075, 134) + Q(281, 55)) / ln(PI / 3), Fraction(4607, 10),
             r"\frac{4607}{10}+\frac{2012}{23}\ln(T)"),
        _chk("fin_2012_23", Q(1, 2) + Q(1075, 268) / ln(PI / 3), Fraction(2012, 23),
             r"\frac{2012}{23}\ln(T)"),
        _chk("fin_293321_69696", 1 + Q(8945, 9) * Q(5, 88) ** 2, Fraction(293321, 69696),
             r"\frac{293321}{69696}\sqrt{x}\ln(x)"),
        _chk("fin_c0", Q(783846699796966), 784 * 10 ** 12,
             r"C_0 = 783846699796966 < 7,84\cdot 10^{14}"),
        _chk("fin_k_statement", Q(1505243592416), 1505234280710,
             r"|R(x)| \leq 1505234280710x",
             note="the proof assembles a larger constant than the statement"),
        AuditItem("fin_320_19", None, "<=", Fraction(320, 19),
                  r"\frac{320}{19}n_Lx\exp\left(- c\sqrt{", "assembly"),
        AuditItem("fin_11715979982", None, "<=", Fraction(11715979982),
                  r"11715979982\frac{|C|}{|G|}x", "assembly"),
        AuditItem("fin_c0_assembly", None, "<=", Fraction(783846699796966),
                  r"C_0 = 783846699796966", "assembly"),
    ]
    ids = [it.id for it in items]
    assert len(ids) == len(set(ids))
    return items
