"""
Fourier-block bookkeeping for CR deformations of the round 3-sphere.

A deformation T^{0,1} = {X + phi_X} decomposes over blocks (K, L); its
phi-component lives where the C4 target is present, -L-4 <= K <= L-4 with
parity. Fillability by Kaehler-Einstein metrics keeps |K| <= L, the
contactomorphism gauge removes everything with -L <= K <= L-4, and what is
left (K = -L-2, -L-4 and their conjugates) spans the self-dual tangent
directions.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Union

import sympy
from typing_extensions import Literal

import invariants
import rep_core
from config.error_messages import ErrorMessages
from config.solver_config import SweepConfig
from exceptions import (
    AuditMismatchError,
    BlockError,
    ConfigurationError,
    NoFunctionBlockError,
    SpectrumError,
)
from invariants import BlockLabel

logger = logging.getLogger(__name__)

Domain = Literal["punctured", "global"]
DOMAINS = ("punctured", "global")


class Tag:
    """Block tags used by classify_block."""

    PARITY_EMPTY = "PARITY_EMPTY"
    HARMONIC_TARGET = "HARMONIC_TARGET"
    KE_FILLABLE = "KE_FILLABLE"
    GAUGE = "GAUGE"
    SD_TANGENT = "SD_TANGENT"
    VOID = "VOID"


TAG_ORDER = (
    Tag.PARITY_EMPTY,
    Tag.KE_FILLABLE,
    Tag.HARMONIC_TARGET,
    Tag.GAUGE,
    Tag.SD_TANGENT,
    Tag.VOID,
)


@dataclass(frozen=True)
class BlockClassification:
    label: BlockLabel
    dims: Mapping[str, int]
    kernel_dim_punctured: int
    kernel_dim_global: int
    tags: FrozenSet[str]

    def has(self, tag: str) -> bool:
        return tag in self.tags

    @property
    def ordered_tags(self) -> List[str]:
        return [tag for tag in TAG_ORDER if tag in self.tags]


@dataclass(frozen=True)
class ContactoMap:
    """Coefficient map C0 -> C4 induced by w -> -i rho(Y)^2 w on one block."""

    label: BlockLabel
    source_index: int
    target_index: Optional[int]
    coefficient: complex

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    @property
    def rank(self) -> int:
        return 0 if self.is_zero else 1


def phi_admissible(label: BlockLabel) -> bool:
    """True iff the block carries a phi-component, -L-4 <= K <= L-4 with parity."""
    return invariants.invariant_dim(label, "C4") == 1


@dataclass(frozen=True)
class DeformationSpectrum:
    """
    Finitely supported coefficients of the phi-component per block.

    With ``real=True`` only K <= 0 representatives are stored; the K > 0
    coefficients are their conjugates (see expanded()). Zero coefficients are
    dropped on construction.
    """

    coefficients: Mapping[BlockLabel, complex] = field(default_factory=dict)
    real: bool = False

    def __post_init__(self) -> None:
        cleaned: Dict[BlockLabel, complex] = {}
        for label, value in self.coefficients.items():
            if not phi_admissible(label):
                raise SpectrumError(
                    ErrorMessages.SPECTRUM_UNSUPPORTED.format(K=label.K, L=label.L)
                )
            if self.real and label.K > 0:
                raise SpectrumError(
                    ErrorMessages.SPECTRUM_REALITY.format(K=label.K, L=label.L)
                )
            if value != 0:
                cleaned[label] = complex(value)
        object.__setattr__(self, "coefficients", cleaned)

    @property
    def support(self) -> List[BlockLabel]:
        return sorted(self.coefficients, key=lambda label: label.sort_key)

    def restricted(self, keep: Callable[[BlockLabel], bool]) -> "DeformationSpectrum":
        return DeformationSpectrum(
            {label: c for label, c in self.coefficients.items() if keep(label)}, real=self.real
        )

    def expanded(self) -> "DeformationSpectrum":
        """All coefficients explicitly, conjugating K < 0 representatives when real."""
        if not self.real:
            return self
        full = dict(self.coefficients)
        for label, value in self.coefficients.items():
            partner = BlockLabel(-label.K, label.L)
            if label.K < 0 and phi_admissible(partner):
                full[partner] = value.conjugate()
        return DeformationSpectrum(full, real=False)

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class GaugeNormalForm:
    gauge: Mapping[BlockLabel, complex]
    residual: DeformationSpectrum


@dataclass(frozen=True)
class AuditEntry:
    """Real-dimension ledger of one +-K pair at level L."""

    L: int
    K: int
    cr_real: int
    contacto_real: int
    harmonic_real: int

    @property
    def balanced(self) -> bool:
        return self.cr_real - self.contacto_real == self.harmonic_real


@dataclass
class AuditReport:
    L_max: int
    entries: List[AuditEntry] = field(default_factory=list)
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def require_clean(self) -> "AuditReport":
        if self.mismatches:
            raise AuditMismatchError(
                ErrorMessages.AUDIT_MISMATCH.format(
                    count=len(self.mismatches), first=self.mismatches[0]
                )
            )
        return self


def kernel_dim(label: BlockLabel, domain: Domain) -> int:
    """
    Dimension of the S1-invariant harmonic spinors of a block, on CH2 minus 0 or on CH2.

    Each weight k in {4, -4} whose S_L factor K-k exists contributes one copy
    of V = S_L on the punctured space; only blocks with both (|K| <= L-4)
    extend across the origin, with one copy.
    """
    if domain not in DOMAINS:
        raise BlockError(
            ErrorMessages.UNKNOWN_DOMAIN.format(domain=domain, choices=", ".join(DOMAINS))
        )
    if not label.parity_ok:
        return 0
    K, L = label.K, label.L
    boundary = sum(1 for k in (4, -4) if abs(K - k) <= L)
    if domain == "punctured":
        return boundary * label.dim_v
    return label.dim_v if boundary == 2 else 0


def classify_block(label: BlockLabel) -> BlockClassification:
    dims = {target: invariants.invariant_dim(label, target) for target in ("S4", "S2", "C4", "C0")}
    K, L = abs(label.K), label.L
    tags = set()
    if not label.parity_ok:
        tags.add(Tag.PARITY_EMPTY)
    else:
        if K <= L - 4:
            tags.add(Tag.HARMONIC_TARGET)
        if K <= L:
            tags.add(Tag.KE_FILLABLE)
        if L - 4 < K <= L:
            tags.add(Tag.GAUGE)
        if K in (L + 2, L + 4):
            tags.add(Tag.SD_TANGENT)
        if K > L + 4:
            tags.add(Tag.VOID)
    return BlockClassification(
        label=label,
        dims=dims,
        kernel_dim_punctured=kernel_dim(label, "punctured"),
        kernel_dim_global=kernel_dim(label, "global"),
        tags=frozenset(tags),
    )


def contacto_action(label: BlockLabel) -> ContactoMap:
    """
    Apply -i rho(Y)^2 to the weight -K vector of S_L.

    The image has weight -K-4, the C4 slot of the same block; it vanishes
    exactly when -K-4 < -L.
    """
    if not label.parity_ok or abs(label.K) > label.L:
        raise NoFunctionBlockError(
            ErrorMessages.NO_FUNCTION_BLOCK.format(K=label.K, L=label.L)
        )
    sl = rep_core.make_irrep(label.L)
    source = (label.L + label.K) // 2
    image = sl.Y * sl.Y * rep_core.basis_vector(label.dim_v, source)
    nonzero = [i for i in range(label.dim_v) if image[i, 0] != 0]
    if not nonzero:
        return ContactoMap(label=label, source_index=source, target_index=None, coefficient=0j)
    target = nonzero[0]
    return ContactoMap(
        label=label,
        source_index=source,
        target_index=target,
        coefficient=complex(-sympy.I * image[target, 0]),
    )


def bland_project(s: DeformationSpectrum) -> DeformationSpectrum:
    """Zero every coefficient with |K| > L."""
    return s.restricted(lambda label: abs(label.K) <= label.L)


def tangent_project(s: DeformationSpectrum) -> DeformationSpectrum:
    """Keep exactly the blocks with |K| in {L+2, L+4}."""
    return s.restricted(lambda label: abs(label.K) in (label.L + 2, label.L + 4))


def is_fillable(s: DeformationSpectrum) -> bool:
    return bland_project(s) == s


def gauge_normal_form(s: DeformationSpectrum) -> GaugeNormalForm:
    """
    Kill every coefficient reachable by the contactomorphism action.

    Returns the gauge-function coefficients on the C0 blocks and the residual
    spectrum, which equals tangent_project(s).
    """
    gauge: Dict[BlockLabel, complex] = {}
    residual: Dict[BlockLabel, complex] = {}
    for label, value in s.coefficients.items():
        action = None
        if abs(label.K) <= label.L:
            action = contacto_action(label)
        if action is not None and not action.is_zero:
            gauge[label] = value / action.coefficient
        else:
            residual[label] = value
    logger.debug("gauge normal form: %d killed, %d residual", len(gauge), len(residual))
    return GaugeNormalForm(gauge=gauge, residual=DeformationSpectrum(residual, real=s.real))


# ----------------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------------


def spectrum_from_records(records: Iterable[Mapping], real: bool = False) -> DeformationSpectrum:
    coefficients: Dict[BlockLabel, complex] = {}
    for record in records:
        if not isinstance(record, Mapping):
            raise SpectrumError(
                ErrorMessages.SPECTRUM_RECORD.format(record=record, details="not an object")
            )
        missing = [key for key in ("K", "L") if key not in record]
        if missing:
            raise SpectrumError(
                ErrorMessages.SPECTRUM_RECORD.format(
                    record=record, details=f"missing {', '.join(missing)}"
                )
            )
        try:
            label = BlockLabel(int(record["K"]), int(record["L"]))
            value = complex(float(record.get("re", 0.0)), float(record.get("im", 0.0)))
        except (TypeError, ValueError, BlockError) as e:
            raise SpectrumError(
                ErrorMessages.SPECTRUM_RECORD.format(record=record, details=str(e))
            ) from e
        coefficients[label] = coefficients.get(label, 0j) + value
    return DeformationSpectrum(coefficients, real=real)


def spectrum_to_records(s: DeformationSpectrum) -> List[Dict[str, Union[int, float]]]:
    return [
        {"K": label.K, "L": label.L, "re": s.coefficients[label].real, "im": s.coefficients[label].imag}
        for label in s.support
    ]


def load_spectrum(path: Union[str, Path], real: bool = False) -> DeformationSpectrum:
    """Read a JSON list of {K, L, re, im} records."""
    try:
        records = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SpectrumError(
            ErrorMessages.SPECTRUM_RECORD.format(record=str(path), details=str(e))
        ) from e
    if not isinstance(records, list):
        raise SpectrumError(
            ErrorMessages.SPECTRUM_RECORD.format(record=str(path), details="expected a list")
        )
    return spectrum_from_records(records, real=real)


def dump_spectrum(s: DeformationSpectrum, path: Optional[Union[str, Path]] = None) -> str:
    text = json.dumps(spectrum_to_records(s), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


# ----------------------------------------------------------------------------
# Transversality audit
# ----------------------------------------------------------------------------


def _ledger(L: int, K: int) -> AuditEntry:
    """
    Real dimensions of the +-K pair, each term summed block by block.

    phi is complex, so each block contributes twice its complex dimension;
    contact functions and spinor targets are real across the pair and
    contribute once. At K = 0 the block is paired with itself.
    """
    cr = contacto = harmonic = 0
    for label in (BlockLabel(K, L), BlockLabel(-K, L)):
        cr += 2 * label.dim_v * invariants.invariant_dim(label, "C4")
        contacto += label.dim_v * invariants.invariant_dim(label, "C0") * contacto_action(label).rank
        harmonic += kernel_dim(label, "global")
    return AuditEntry(L=L, K=K, cr_real=cr, contacto_real=contacto, harmonic_real=harmonic)


def _partition_problems(L: int) -> List[str]:
    problems = []
    for K in range(-L - 4, L - 3, 2):
        label = BlockLabel(K, L)
        tags = classify_block(label).tags
        sides = tags & {Tag.KE_FILLABLE, Tag.SD_TANGENT}
        if len(sides) != 1:
            problems.append(f"block {label} carries {sorted(sides) or 'no'} fillability side")
        if Tag.VOID in tags or Tag.PARITY_EMPTY in tags:
            problems.append(f"admissible block {label} tagged {sorted(tags)}")
        if Tag.GAUGE in tags and Tag.KE_FILLABLE not in tags:
            problems.append(f"gauge block {label} is not fillable")
        if (Tag.HARMONIC_TARGET in tags) != (kernel_dim(label, "global") > 0):
            problems.append(f"harmonic tag of {label} disagrees with the global kernel")
    return problems


def transversality_audit(L_max: int) -> AuditReport:
    """
    Dimension ledger cr - contacto = harmonic for every +-K pair with |K| <= L-4,
    plus completeness of the KE / self-dual partition of the phi-blocks.
    """
    if L_max < SweepConfig.MIN_LMAX:
        raise ConfigurationError(
            ErrorMessages.INVALID_LMAX.format(minimum=SweepConfig.MIN_LMAX, value=L_max)
        )
    report = AuditReport(L_max=L_max)
    for L in range(0, L_max + 1):
        report.mismatches.extend(_partition_problems(L))
        for K in range(L % 2, L - 3, 2):
            entry = _ledger(L, K)
            report.entries.append(entry)
            if not entry.balanced:
                report.mismatches.append(
                    f"ledger at L={L}, K=+-{K}: {entry.cr_real} - {entry.contacto_real} "
                    f"!= {entry.harmonic_real}"
                )
    logger.info(
        "transversality audit to L=%d: %d pairs, %d mismatches",
        L_max,
        len(report.entries),
        len(report.mismatches),
    )
    return report


def sweep_labels(L_max: int, L_min: int = 0) -> List[BlockLabel]:
    """Every block with |K| <= L+4 for L_min <= L <= L_max, parity failures included."""
    return [BlockLabel(K, L) for L in range(L_min, L_max + 1) for K in range(-L - 4, L + 5)]
