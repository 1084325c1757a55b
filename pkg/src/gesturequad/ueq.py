"""User Experience Questionnaire scoring and comparison statistics.

Implements the standard 26-item instrument: answers on a 1..7 scale map
to -3..+3 (negated for reversed items), items aggregate into six scale
means, and perspicuity/efficiency/dependability roll up into the
pragmatic quality while stimulation/novelty form the hedonic quality.
Attractiveness stands alone. The item-to-scale assignment ships as a
data file rather than code so localized or reordered questionnaires can
supply their own.

Group comparison uses Welch's unequal-variance t-test by default
(Student's pooled test is available behind a flag); completion-time
summaries use Tukey fences with linearly interpolated quartiles.
"""

from __future__ import annotations

import csv
import importlib.resources
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import stdtr

from .errors import (ConfigError, EmptyDataset, InsufficientData,
                     OutOfRangeAnswer, WrongItemCount)

SCALES = ("attractiveness", "perspicuity", "efficiency",
          "dependability", "stimulation", "novelty")
PRAGMATIC_SCALES = ("perspicuity", "efficiency", "dependability")
HEDONIC_SCALES = ("stimulation", "novelty")

ITEM_COUNT = 26
_SCALE_SIZES = {"attractiveness": 6, "perspicuity": 4, "efficiency": 4,
                "dependability": 4, "stimulation": 4, "novelty": 4}


@dataclass(frozen=True)
class UeqItem:
    index: int          # 1-based questionnaire position
    scale: str
    reversed: bool      # positive pole printed on the left


@dataclass(frozen=True)
class UeqItemMap:
    items: tuple[UeqItem, ...]

    def __post_init__(self):
        indices = sorted(item.index for item in self.items)
        if indices != list(range(1, ITEM_COUNT + 1)):
            raise ConfigError("item map must cover indices 1..26 exactly once")
        for scale, size in _SCALE_SIZES.items():
            got = sum(1 for item in self.items if item.scale == scale)
            if got != size:
                raise ConfigError(f"scale {scale} needs {size} items, got {got}")

    def by_scale(self, scale: str) -> list[UeqItem]:
        return [item for item in self.items if item.scale == scale]


def load_item_map(path=None) -> UeqItemMap:
    if path is None:
        text = importlib.resources.files("gesturequad.data") \
            .joinpath("ueq_item_map.csv").read_text()
        rows = list(csv.DictReader(text.splitlines()))
    else:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    items = []
    for row in rows:
        try:
            scale = row["scale"].strip().lower()
            if scale not in SCALES:
                raise ConfigError(f"unknown scale {scale!r}")
            items.append(UeqItem(index=int(row["item"]), scale=scale,
                                 reversed=row["reversed"].strip() in ("1", "true", "yes")))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad item map row {row!r}: {exc}") from exc
    return UeqItemMap(items=tuple(items))


@dataclass(frozen=True)
class UeqResponse:
    participant_id: str
    condition: str
    answers: tuple[int, ...]

    def __post_init__(self):
        if len(self.answers) != ITEM_COUNT:
            raise WrongItemCount(f"expected {ITEM_COUNT} answers, got {len(self.answers)}")
        for i, answer in enumerate(self.answers, start=1):
            if not 1 <= answer <= 7:
                raise OutOfRangeAnswer(f"answer {i} is {answer}, must be 1..7")


@dataclass(frozen=True)
class ScaleScores:
    attractiveness: float
    perspicuity: float
    efficiency: float
    dependability: float
    stimulation: float
    novelty: float

    def get(self, scale: str) -> float:
        if scale == "pragmatic":
            return self.pragmatic
        if scale == "hedonic":
            return self.hedonic
        if scale not in SCALES:
            raise KeyError(scale)
        return getattr(self, scale)

    @property
    def pragmatic(self) -> float:
        return sum(getattr(self, s) for s in PRAGMATIC_SCALES) / len(PRAGMATIC_SCALES)

    @property
    def hedonic(self) -> float:
        return sum(getattr(self, s) for s in HEDONIC_SCALES) / len(HEDONIC_SCALES)


def transform_answer(answer: int, reversed_: bool) -> int:
    """1..7 answer to the -3..+3 scale, positive pole always +."""
    value = answer - 4
    return -value if reversed_ else value


def score(response: UeqResponse, item_map: UeqItemMap) -> ScaleScores:
    means = {}
    for scale in SCALES:
        items = item_map.by_scale(scale)
        values = [transform_answer(response.answers[item.index - 1], item.reversed)
                  for item in items]
        means[scale] = sum(values) / len(values)
    return ScaleScores(**means)


# -- group comparison --------------------------------------------------------

@dataclass(frozen=True)
class ScaleComparison:
    scale: str
    mean_a: float
    mean_b: float
    t: float
    df: float
    p: float
    significant: bool


def welch_t(a, b) -> tuple[float, float, float]:
    """Welch's t statistic, Welch-Satterthwaite df, and two-sided p."""
    na, nb = len(a), len(b)
    ma, mb = sum(a) / na, sum(b) / nb
    va = sum((x - ma) ** 2 for x in a) / (na - 1)
    vb = sum((x - mb) ** 2 for x in b) / (nb - 1)
    sea, seb = va / na, vb / nb
    if sea + seb == 0.0:
        t = 0.0 if ma == mb else math.copysign(math.inf, ma - mb)
        return t, float(na + nb - 2), 1.0 if ma == mb else 0.0
    t = (ma - mb) / math.sqrt(sea + seb)
    # df from the ratio of the two error terms: same formula, but it
    # cannot underflow when the variances are denormally small
    m = max(sea, seb)
    ra, rb = sea / m, seb / m
    df = (ra + rb) ** 2 / (ra ** 2 / (na - 1) + rb ** 2 / (nb - 1))
    p = 2.0 * stdtr(df, -abs(t))
    return t, df, p


def student_t(a, b) -> tuple[float, float, float]:
    """Pooled-variance Student's t for callers that ask for it."""
    na, nb = len(a), len(b)
    ma, mb = sum(a) / na, sum(b) / nb
    ssa = sum((x - ma) ** 2 for x in a)
    ssb = sum((x - mb) ** 2 for x in b)
    df = na + nb - 2
    pooled = (ssa + ssb) / df
    se = math.sqrt(pooled * (1 / na + 1 / nb))
    if se == 0.0:
        t = 0.0 if ma == mb else math.copysign(math.inf, ma - mb)
        return t, float(df), 1.0 if ma == mb else 0.0
    t = (ma - mb) / se
    return t, float(df), 2.0 * stdtr(df, -abs(t))


def compare(group_a, group_b, alpha: float = 0.05,
            student: bool = False) -> list[ScaleComparison]:
    """Per-scale two-sample test between two groups of ScaleScores.

    Also reports the pragmatic and hedonic aggregates. significant iff
    p < alpha.
    """
    if len(group_a) < 2 or len(group_b) < 2:
        raise InsufficientData(
            f"need >=2 responses per group, got {len(group_a)} and {len(group_b)}")
    test = student_t if student else welch_t
    results = []
    for scale in SCALES + ("pragmatic", "hedonic"):
        a = [s.get(scale) for s in group_a]
        b = [s.get(scale) for s in group_b]
        t, df, p = test(a, b)
        results.append(ScaleComparison(scale=scale, mean_a=sum(a) / len(a),
                                       mean_b=sum(b) / len(b), t=t, df=df, p=p,
                                       significant=p < alpha))
    return results


# -- completion times --------------------------------------------------------

@dataclass(frozen=True)
class TimeStats:
    mean: float
    median: float
    q1: float
    q3: float
    outliers: tuple[float, ...]

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def time_stats(times) -> TimeStats:
    """Mean/median plus Tukey-fence outliers (1.5 IQR).

    Quartiles use linear interpolation between closest ranks, matching
    numpy's default percentile method.
    """
    times = list(times)
    if not times:
        raise EmptyDataset("no completion times")
    if any(t <= 0 for t in times):
        raise ValueError("completion times must be positive")
    q1, q3 = (float(q) for q in np.percentile(times, [25, 75]))
    iqr = q3 - q1
    lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    outliers = tuple(t for t in sorted(times) if t < lo or t > hi)
    return TimeStats(mean=sum(times) / len(times), median=float(np.median(times)),
                     q1=q1, q3=q3, outliers=outliers)


def format_mmss(seconds: float) -> str:
    """Seconds to the m:ss display convention (e.g. 193 -> '3:13')."""
    total = round(seconds)
    minutes, secs = divmod(total, 60)
    return f"{minutes}:{secs:02d}"


def parse_mmss(text: str) -> float:
    """'3:13' -> 193.0; plain numbers pass through."""
    text = text.strip()
    if ":" in text:
        minutes, secs = text.split(":", 1)
        return int(minutes) * 60 + float(secs)
    return float(text)


# -- tabular input -----------------------------------------------------------

def load_responses(path) -> list[UeqResponse]:
    """CSV with header participant_id,condition,q1..q26."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        responses = []
        for row in reader:
            try:
                answers = tuple(int(row[f"q{i}"]) for i in range(1, ITEM_COUNT + 1))
            except (KeyError, TypeError, ValueError) as exc:
                raise WrongItemCount(f"{path}: row {row.get('participant_id')!r}: {exc}") from exc
            responses.append(UeqResponse(participant_id=row.get("participant_id", ""),
                                         condition=row.get("condition", ""),
                                         answers=answers))
    if not responses:
        raise EmptyDataset(f"{path}: no responses")
    return responses


def load_times(path) -> list[dict]:
    """CSV with header participant_id,condition,iteration,seconds.

    The seconds column accepts either plain seconds or m:ss text.
    """
    with open(path, newline="") as fh:
        rows = []
        for row in csv.DictReader(fh):
            try:
                seconds = parse_mmss(row["seconds"])
            except (KeyError, ValueError) as exc:
                raise EmptyDataset(f"{path}: bad seconds in {row!r}: {exc}") from exc
            rows.append({"participant_id": row.get("participant_id", ""),
                         "condition": row.get("condition", ""),
                         "iteration": row.get("iteration", ""),
                         "seconds": seconds})
    if not rows:
        raise EmptyDataset(f"{path}: no rows")
    return rows
