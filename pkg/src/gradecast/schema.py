"""Questionnaire data model: 70 variables, their prompts, and 21 factors.

Variables are identified by the strings ``"x1"``..``"x70"``. Each variable
belongs to exactly one factor; factors cover contiguous, disjoint variable
ranges. The grade target lives on a separate axis bounded by
:data:`DEFAULT_GRADE_BOUNDS`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum

from .errors import GradecastError

N_VARIABLES = 70

#: Grade axis used for display clamping. Configurable per call site.
DEFAULT_GRADE_BOUNDS = (0.0, 7.0)


class FactorCode(str, Enum):
    """The 21 investigated factors, in canonical (variable-range) order."""

    SSH = "SSH"  # study habit
    SF = "SF"  # fear and perception
    SATD = "SATD"  # attendance
    SAT = "SAT"  # attitude
    ST = "ST"  # tutorials and extra classes
    LAT = "LAT"  # lecturer attitude
    LTS = "LTS"  # teaching style
    LCS = "LCS"  # communication skills
    LA = "LA"  # lecturer availability
    LD = "LD"  # lecturer dedication
    OH = "OH"  # health
    OE = "OE"  # electricity
    OB = "OB"  # background knowledge
    UF = "UF"  # university facilities
    UCP = "UCP"  # class population
    ULT = "ULT"  # lecture time
    UTA = "UTA"  # teaching aids
    FI = "FI"  # family income
    FS = "FS"  # family stress
    FPE = "FPE"  # parent education
    FPG = "FPG"  # proper guidance


#: Inclusive variable-index range owned by each factor.
FACTOR_RANGES: dict[FactorCode, tuple[int, int]] = {
    FactorCode.SSH: (1, 3),
    FactorCode.SF: (4, 6),
    FactorCode.SATD: (7, 9),
    FactorCode.SAT: (10, 13),
    FactorCode.ST: (14, 16),
    FactorCode.LAT: (17, 20),
    FactorCode.LTS: (21, 24),
    FactorCode.LCS: (25, 28),
    FactorCode.LA: (29, 31),
    FactorCode.LD: (32, 35),
    FactorCode.OH: (36, 38),
    FactorCode.OE: (39, 41),
    FactorCode.OB: (42, 45),
    FactorCode.UF: (46, 49),
    FactorCode.UCP: (50, 52),
    FactorCode.ULT: (53, 55),
    FactorCode.UTA: (56, 58),
    FactorCode.FI: (59, 61),
    FactorCode.FS: (62, 64),
    FactorCode.FPE: (65, 67),
    FactorCode.FPG: (68, 70),
}

#: Lowercase factor names, used as feature names in factor-level datasets.
FACTOR_FEATURES = tuple(code.value.lower() for code in FactorCode)


def variable_id(index: int) -> str:
    """Render a 1-based variable index as its identifier, e.g. 9 -> "x9"."""
    if not 1 <= index <= N_VARIABLES:
        raise GradecastError(f"variable index {index} outside 1..{N_VARIABLES}")
    return f"x{index}"


def variable_index(name: str) -> int:
    """Parse an identifier back to its index, e.g. "x9" -> 9."""
    if not name.startswith("x"):
        raise GradecastError(f"invalid variable id: {name!r}")
    try:
        index = int(name[1:])
    except ValueError:
        raise GradecastError(f"invalid variable id: {name!r}") from None
    if not 1 <= index <= N_VARIABLES:
        raise GradecastError(f"variable index {index} outside 1..{N_VARIABLES}")
    return index


VARIABLE_IDS = tuple(f"x{i}" for i in range(1, N_VARIABLES + 1))


@dataclass(frozen=True)
class ResponseScale:
    """Closed integer response range, default 1..5 Likert."""

    min: int = 1
    max: int = 5

    def __post_init__(self):
        if self.min >= self.max:
            raise GradecastError(f"scale min {self.min} must be < max {self.max}")

    @property
    def span(self) -> int:
        return self.max - self.min


@dataclass(frozen=True)
class Variable:
    id: str
    prompt: str
    factor: FactorCode


@dataclass(frozen=True)
class QuestionnaireSchema:
    """Immutable questionnaire description: ordered variables plus scale."""

    variables: tuple[Variable, ...]
    scale: ResponseScale = field(default_factory=ResponseScale)

    def __post_init__(self):
        seen = set()
        for var in self.variables:
            variable_index(var.id)
            if var.id in seen:
                raise GradecastError(f"duplicate variable id: {var.id}")
            seen.add(var.id)

    def factor_of(self, var_id: str) -> FactorCode:
        for var in self.variables:
            if var.id == var_id:
                return var.factor
        raise GradecastError(f"unknown variable id: {var_id}")

    def prompt_of(self, var_id: str) -> str:
        for var in self.variables:
            if var.id == var_id:
                return var.prompt
        raise GradecastError(f"unknown variable id: {var_id}")

    def members(self, code: FactorCode) -> list[str]:
        return [v.id for v in self.variables if v.factor == code]

    @property
    def variable_ids(self) -> list[str]:
        return [v.id for v in self.variables]

    def to_dict(self) -> dict:
        return {
            "scale": {"min": self.scale.min, "max": self.scale.max},
            "variables": [
                {"id": v.id, "prompt": v.prompt, "factor": v.factor.value}
                for v in self.variables
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, payload: dict) -> "QuestionnaireSchema":
        scale = ResponseScale(int(payload["scale"]["min"]), int(payload["scale"]["max"]))
        variables = tuple(
            Variable(entry["id"], entry["prompt"], FactorCode(entry["factor"]))
            for entry in payload["variables"]
        )
        return cls(variables=variables, scale=scale)

    @classmethod
    def from_json(cls, text: str) -> "QuestionnaireSchema":
        return cls.from_dict(json.loads(text))


def factor_members(schema: QuestionnaireSchema, code: FactorCode) -> list[str]:
    """Variable ids of a factor, ascending by index."""
    members = schema.members(code)
    return sorted(members, key=variable_index)


# Prompts as printed in the source questionnaire table, including its
# punctuation and spelling quirks (x52/x2 trailing periods, x54 wording).
_PROMPTS = (
    "I had enough time to study programming",
    "Studying before attending a class aided my assimilation during programming classes.",
    "Studying programming was never a wasted effort",
    "Programming sounded very scary",
    "I was always nervous during programming classes",
    "I was always nervous during programming examinations",
    "I attended programming classes regularly",
    "Blending in after missing a class was very easy",
    "I was very serious with programming classes",
    "I believed I could understand the programming course",
    "I had interest in programming beyond class level",
    "Programming was not confusing and did not cause headache",
    "Programming is relevant to my pursuit",
    "Group discussions helped me to understand programming",
    "Attending programming tutorials was very helpful",
    "Programming courses tutorials helped me so much",
    "Motivation of programming lecturers encouraged my commitment towards learning programming",
    "Programming language lecturers helped me develop interest in programming",
    "Programming languages lecturers were never partial in their dealings with students",
    "Programming lecturers were friendly during lectures",
    "Programming language lecturers enforced discipline during their lectures",
    "Programming languages lecturers were too serious during lectures",
    "Teaching methods and styles of programming lecturers inhibited lecture clarity",
    "Programming language lecturers wasted time on matters with less relevance in class",
    "Programming language lecturers were always clear, precise and communicates understandably",
    "Programming language lecturers made use of enough relevant instructional materials",
    "Programming language lecturers delivered course contents well and to my understanding",
    "Programming language lecturers were very clear and explicit",
    "Programming language lecturers didn't miss classes",
    "Programming language lecturers attended to me whenever I had difficulties with their course(s)",
    "Programming lecturers were always available",
    "Programming course lecturers allowed students to ask questions and take time to explain",
    "Programming course lecturers came to class fully prepared",
    "Programming languages lecturers spent extra time to explain things during class",
    "Programming language lecturers usually came early to class",
    "I fell sick quite often",
    "Prolong usage of computer caused me headache",
    "I took a few compulsory medications frequently",
    "It was difficult to charge my computer even within the campus",
    "Erratic power supply reduced the effectiveness of my practice",
    "Consistent power supply helped me in programming courses",
    "I had a good background in physics",
    "I had a good background in mathematics",
    "I had a good background in English",
    "Strong background in Physics and Mathematics helped me in programming",
    "Absence of accessible ICT facilities inhibited my programming performance",
    "The environment where we had programming lectures was not conducive",
    "Lack of computer programming facilities disrupted clear understanding of programming lessons",
    "The school library was not equipped with materials relevant to programming",
    "Large class population disrupted my concentration during programming lectures",
    "Population of students offering programming courses debarred my commitment to learning",
    "Effectiveness of the programming lecturers' teaching was reduced by huge programming class population.",
    "Programming lectures were scheduled after an equally tiring lecture",
    "Programming courses were scheduled to non-conductive times",
    "We had programming classes at unfavorable times",
    "Programming lecture theatres were equipped with audio-visuals and learning aids",
    "Programming courses were analyzed clearly to sight",
    "I had a visual understanding of what the programming lecturer was implying",
    "Expensive cost of living did not affect my performance in programming classes",
    "My family could afford to buy enough programming textbooks",
    "My family sponsored my academic pursuit",
    "Quarrel between family members is normal",
    "I had to travel to settle quarrels within my family",
    "Quarrel between my family members escalates a times",
    "My father is familiar with computers",
    "My mother is familiar with computers",
    "My parents are well educated",
    "My parent would want me to offer programming courses",
    "I received educational advices from family members often",
    "My family believed that a proper study will help me in programming courses",
)


def _factor_for_index(index: int) -> FactorCode:
    for code, (lo, hi) in FACTOR_RANGES.items():
        if lo <= index <= hi:
            return code
    raise GradecastError(f"variable index {index} not covered by any factor")


_BUILTIN = QuestionnaireSchema(
    variables=tuple(
        Variable(variable_id(i), _PROMPTS[i - 1], _factor_for_index(i))
        for i in range(1, N_VARIABLES + 1)
    ),
    scale=ResponseScale(1, 5),
)


def builtin_schema() -> QuestionnaireSchema:
    """The canonical 70-variable, 21-factor questionnaire."""
    return _BUILTIN


def active_schema() -> QuestionnaireSchema:
    """The builtin schema, unless GRADECAST_SCHEMA points at a JSON file."""
    path = os.environ.get("GRADECAST_SCHEMA")
    if not path:
        return _BUILTIN
    with open(path, "r", encoding="utf-8") as handle:
        return QuestionnaireSchema.from_json(handle.read())
