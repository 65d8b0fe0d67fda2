"""Signed 59.18-decimal fixed-point arithmetic.

Values are 256-bit signed integers holding ``real_value * 10**18``, the same
layout the generated contracts use on chain. All operations are pure and
reject any result outside the int256 range instead of wrapping. mul and div
truncate toward zero, so magnitudes never round up; Python's unbounded ints
stand in for the 512-bit intermediates a contract would use.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

DECIMALS = 18
UNIT = 10**DECIMALS
HALF_UNIT = UNIT // 2
RAW_MIN = -(2**255)
RAW_MAX = 2**255 - 1

# Domain of exp, matching the on-chain library: inputs at or above the upper
# bound are rejected, inputs at or below the lower bound return zero. Between
# the lower bound and ln(1e-18) the computed path truncates to zero anyway,
# so the early return never changes an observable result.
EXP_UPPER_BOUND_RAW = 133084258667509499441
EXP_UNDERFLOW_RAW = -41446531673892822322

_DECIMAL_RE = re.compile(r"^(-?)([0-9]+)(?:\.([0-9]+))?$")


class FixedPointError(ArithmeticError):
    """Base class for fixed-point arithmetic failures."""


class FixedPointOverflowError(FixedPointError):
    """Result does not fit in a 256-bit signed integer."""


@dataclass(frozen=True)
class Fixed:
    """A signed 59.18-decimal fixed-point value; ``raw`` is value * 10**18."""

    raw: int

    def __post_init__(self) -> None:
        if not RAW_MIN <= self.raw <= RAW_MAX:
            raise FixedPointOverflowError(f"raw value {self.raw} outside int256 range")

    def __float__(self) -> float:
        return self.raw / UNIT

    def __str__(self) -> str:
        return to_decimal(self)


ZERO = Fixed(0)
ONE = Fixed(UNIT)
HALF = Fixed(HALF_UNIT)


def _checked(raw: int) -> Fixed:
    if not RAW_MIN <= raw <= RAW_MAX:
        raise FixedPointOverflowError(f"result {raw} outside int256 range")
    return Fixed(raw)


def _trunc_div(numerator: int, denominator: int) -> int:
    """Integer division truncating toward zero; denominator must be nonzero."""
    quotient = abs(numerator) // abs(denominator)
    if (numerator < 0) != (denominator < 0):
        return -quotient
    return quotient


def from_decimal(text: str) -> Fixed:
    """Parse ``-?digits[.digits]`` (at most 18 fractional digits) exactly."""
    match = _DECIMAL_RE.match(text)
    if match is None:
        raise ValueError(f"malformed decimal numeral: {text!r}")
    sign, integer_part, fraction_part = match.groups()
    fraction_part = fraction_part or ""
    if len(fraction_part) > DECIMALS:
        raise ValueError(
            f"{text!r} has {len(fraction_part)} fractional digits; at most {DECIMALS} "
            "are representable (round first)"
        )
    raw = int(integer_part) * UNIT + int(fraction_part or "0") * 10 ** (DECIMALS - len(fraction_part))
    if sign == "-":
        raw = -raw
    return _checked(raw)


def to_decimal(value: Fixed) -> str:
    """Canonical text form: sign, integer part, '.', exactly 18 digits."""
    magnitude = abs(value.raw)
    whole, frac = divmod(magnitude, UNIT)
    sign = "-" if value.raw < 0 else ""
    return f"{sign}{whole}.{frac:0{DECIMALS}d}"


def round_scaled(numerator: int, denominator: int) -> int:
    """Round numerator/denominator to the nearest integer, ties away from zero."""
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    quotient, remainder = divmod(abs(numerator), denominator)
    if 2 * remainder >= denominator:
        quotient += 1
    return -quotient if numerator < 0 else quotient


def from_float(value: float) -> Fixed:
    """Round an IEEE-754 double to the nearest Fixed, ties away from zero."""
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"cannot convert non-finite value {value!r}")
    mantissa, exponent = value.as_integer_ratio()
    return _checked(round_scaled(mantissa * UNIT, exponent))


def add(a: Fixed, b: Fixed) -> Fixed:
    """Exact sum; errors on int256 overflow."""
    return _checked(a.raw + b.raw)


def sub(a: Fixed, b: Fixed) -> Fixed:
    """Exact difference; errors on int256 overflow."""
    return _checked(a.raw - b.raw)


def neg(value: Fixed) -> Fixed:
    """Negation; the minimum raw value has no representable negation."""
    return _checked(-value.raw)


def mul(a: Fixed, b: Fixed) -> Fixed:
    """trunc(a * b / 10**18) over the full-width intermediate product."""
    return _checked(_trunc_div(a.raw * b.raw, UNIT))


def div(a: Fixed, b: Fixed) -> Fixed:
    """trunc(a * 10**18 / b) over the full-width intermediate product."""
    if b.raw == 0:
        raise ZeroDivisionError("fixed-point division by zero")
    return _checked(_trunc_div(a.raw * UNIT, b.raw))


def relu(value: Fixed) -> Fixed:
    """x if positive, else zero."""
    return value if value.raw > 0 else ZERO


# exp works in base 2: e**x = 2**(x * log2(e)). The base-2 exponent is split
# into an integer part (a shift) and a 128-bit fractional part; each set
# fraction bit k contributes one precomputed factor 2**(1/2**k). Factors are
# scaled by 2**192 and every step truncates, keeping the whole computation in
# integers. Tables are frozen output of tools/gen_exp_tables.py.
_FRACTION_BITS = 128
_PRODUCT_BITS = 192

LOG2E_Q256 = 167052672916848388242985626561247531987276682633131050150846402744536260568208

EXP2_FRACTION_FACTORS = (
    8877162406579534828678351183397059828045242093918884417690,
    7464774045317768453201677477944686347737831060865891500786,
    6845227981165683389866201995580584438791576356629740284223,
    6555012771893932512490750100488603505289503991177254314659,
    6414552365203456685841281079553200157469839790873483983608,
    6345454891758931698578299796390944806611837508792293832860,
    6311185777084833422763308095605011855094842682364972114948,
    6294120684709417395141815994194253101638533761220910465515,
    6285605449972396039901071997599371205869593527219257721884,
    6281352153635211177224088204055436215885918524987894589409,
    6279226584871615276431171999771824874205336189576937499713,
    6278164070234529729008799366385080352205608009018332914481,
    6277632880338852189849630884918880199521106173089440648921,
    6277367302245065884628372854492270734749217748784327014888,
    6277234517411477884069843006005790892923052556680220853540,
    6277168126047984177329942300060586259488950484511281061311,
    6277134930629559148100062362523787801099250937717273069737,
    6277118332986176683368570909983202887727479348889992667783,
    6277110034180942912704992877394132242886094775181979177694,
    6277105884782440386452674711319597470354270024415160426472,
    6277103810084217712303125439886631168288328990363561021221,
    6277102772735363522373346080902281635844536906480829464915,
    6277102254061000714182310577412639083225569257408796891424,
    6277101994723835381778707039510926682169573997131793868138,
    6277101865055256733499690157766159580685928780106634989858,
    6277101800220968413840853730414399939830233245115274888898,
    6277101767803824505131600494083622404393681108056958040414,
    6277101751595252613557014742000131159058711666460402960270,
    6277101743490966683464732035197062889797456624663047888015,
    6277101739438823722342343218194973479427091074181563695367,
    6277101737412752242762086943055011879439774619394223128022,
    6277101736399716503217193338732954596318071372977603011838,
    6277101735893198633506055169872363426550262563706180542371,
    6277101735639939698665813243765734283686718934802756135728,
    6277101735513310231249524070293155957019063467918964974216,
    6277101735449995497542337430952028309158643943361145843580,
    6277101735418338130688983598130252045882083676851501164261,
    6277101735402509447262366553431560452130378101313727877093,
    6277101735394595105549072999010263745691564226154145232335,
    6277101735390637934692429963781627659577091425887197634866,
    6277101735388659349264109381662812682608047861227812764773,
    6277101735387670056549949324477280960559569200409928141675,
    6277101735387175410192869354352984041133590014459351657468,
    6277101735386928087014329383907952816818821628108706805050,
    6277101735386804425425059402339716513510824757903301730278,
    6277101735386742594630424412469168189069152156207298094529,
    6277101735386711679233106917762286483651394689043998447584,
    6277101735386696221534448170465943745143285335800152597537,
    6277101735386688492685118796832046904439422963252259219707,
    6277101735386684628260454110018667116225039847870517236820,
    6277101735386682696048121766612869380152235307261909586787,
    6277101735386681729941955594910193551624429791148073117736,
    6277101735386681246888872509058911397237676221628759412279,
    6277101735386681005362330966133284260013586734002252153077,
    6277101735386680884599060194670474176393863814472129479515,
    6277101735386680824217424808939070005832082810777831326451,
    6277101735386680794026607116073368138363212422948370601436,
    6277101735386680778931198269640517259081782257538062021257,
    6277101735386680771383493846424091833054318431959013138556,
    6277101735386680767609641634815879123443899333451015044278,
    6277101735386680765722715529011772769489517987767397583310,
    6277101735386680764779252476109719592725034365818184249294,
    6277101735386680764307520949658693004395969317566726431394,
    6277101735386680764071655186433179710244730984121784734720,
    6277101735386680763953722304820423063172435365069510689452,
    6277101735386680763894755864014044739637118442460922867585,
    6277101735386680763865272643610855577869667702886016256843,
    6277101735386680763850531033409260996985994263530909776520,
    6277101735386680763843160228308463706544170526461443242621,
    6277101735386680763839474825758065061323261903578731652237,
    6277101735386680763837632124482865738712808403550381276186,
    6277101735386680763836710773845266077407581856389457442946,
    6277101735386680763836250098526466246754968633522308365022,
    6277101735386680763836019760867066331428662034767062035734,
    6277101735386680763835904592037366373765508738559020923509,
    6277101735386680763835847007622516394933932091247395880501,
    6277101735386680763835818215415091405518143767789682237273,
    6277101735386680763835803819311378910810249606110350135228,
    6277101735386680763835796621259522663456302525283065264098,
    6277101735386680763835793022233594539779328984872518123506,
    6277101735386680763835791222720630477940842214668018376953,
    6277101735386680763835790322964148447021598829565961959613,
    6277101735386680763835789873085907431561977137014982114926,
    6277101735386680763835789648146786923832166290739504283579,
    6277101735386680763835789535677226669967260867601768390655,
    6277101735386680763835789479442446543034808156032901199880,
    6277101735386680763835789451325056479568581800248467793414,
    6277101735386680763835789437266361447835468622356251137411,
    6277101735386680763835789430237013931968912033410142821218,
    6277101735386680763835789426722340174035633738937088666073,
    6277101735386680763835789424965003295068994591700561589238,
    6277101735386680763835789424086334855585675018082298051006,
    6277101735386680763835789423647000635844015231273166281935,
    6277101735386680763835789423427333525973185337868600397412,
    6277101735386680763835789423317499971037770391166317455153,
    6277101735386680763835789423262583193570062917815175984024,
    6277101735386680763835789423235124804836209181139605248460,
    6277101735386680763835789423221395610469282312801819880678,
    6277101735386680763835789423214531013285818878632927196787,
    6277101735386680763835789423211098714694087161548480854842,
    6277101735386680763835789423209382565398221303006257683869,
    6277101735386680763835789423208524490750288373735146098382,
    6277101735386680763835789423208095453426321909099590305639,
    6277101735386680763835789423207880934764338676781812409268,
    6277101735386680763835789423207773675433347060622923461082,
    6277101735386680763835789423207720045767851252543478986989,
    6277101735386680763835789423207693230935103348503756749942,
    6277101735386680763835789423207679823518729396483895631419,
    6277101735386680763835789423207673119810542420473965072158,
    6277101735386680763835789423207669767956448932468999792527,
    6277101735386680763835789423207668092029402188466517152711,
    6277101735386680763835789423207667254065878816465275832804,
    6277101735386680763835789423207666835084117130464655172850,
    6277101735386680763835789423207666625593236287464344842873,
    6277101735386680763835789423207666520847795865964189677884,
    6277101735386680763835789423207666468475075655214112095390,
    6277101735386680763835789423207666442288715549839073304143,
    6277101735386680763835789423207666429195535497151553908520,
    6277101735386680763835789423207666422648945470807794210708,
    6277101735386680763835789423207666419375650457635914361802,
    6277101735386680763835789423207666417739002951049974437349,
    6277101735386680763835789423207666416920679197757004475122,
    6277101735386680763835789423207666416511517321110519494009,
    6277101735386680763835789423207666416306936382787277003453,
    6277101735386680763835789423207666416204645913625655758174,
    6277101735386680763835789423207666416153500679044845135535,
    6277101735386680763835789423207666416127928061754439824216,
    6277101735386680763835789423207666416115141753109237168556,
)

_EXP2_DIVISOR = UNIT << (256 - _FRACTION_BITS)


def exp(value: Fixed) -> Fixed:
    """e**x truncated to the raw grid.

    Inputs at or below EXP_UNDERFLOW_RAW return zero; inputs at or above
    EXP_UPPER_BOUND_RAW raise, everything in between is exact to the last
    raw unit (the only loss is the final truncation).
    """
    x = value.raw
    if x >= EXP_UPPER_BOUND_RAW:
        raise FixedPointOverflowError(f"exp argument {x} at or above the supported domain")
    if x <= EXP_UNDERFLOW_RAW:
        return ZERO
    # Base-2 exponent in binary fixed point, floored so the fraction is in [0, 1).
    exponent = (x * LOG2E_Q256) // _EXP2_DIVISOR
    shift = exponent >> _FRACTION_BITS
    fraction = exponent & ((1 << _FRACTION_BITS) - 1)
    product = 1 << _PRODUCT_BITS
    for k in range(_FRACTION_BITS):
        if fraction >> (_FRACTION_BITS - 1 - k) & 1:
            product = (product * EXP2_FRACTION_FACTORS[k]) >> _PRODUCT_BITS
    scaled = product * UNIT
    remaining = _PRODUCT_BITS - shift
    raw = scaled >> remaining if remaining >= 0 else scaled << -remaining
    return _checked(raw)


def sigmoid(value: Fixed) -> Fixed:
    """1 / (1 + e**-x), total over the whole raw range, always within [0, 1].

    Each branch uses only exp/add/div in a fixed order; the generated
    contract's sigmoid helper performs the same sequence on chain.
    """
    if value.raw >= 0:
        return div(ONE, add(ONE, exp(Fixed(-value.raw))))
    grown = exp(value)
    return div(grown, add(ONE, grown))
