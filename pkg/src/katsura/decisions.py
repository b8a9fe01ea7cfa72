"""Top-level structure verdicts for a pair (A, B).

Verdicts are tri-state because several of the underlying criteria are only
sufficient conditions, and the fixed-cylinder search is a bounded
exploration of an in-general unbounded state space.  A Yes or No always
cites the rule that produced it; Unknown names what stayed undecided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matrices
from .errors import StructuralError
from .ktheory import KTheoryResult, k_groups
from .matrices import MatrixPair
from .pathspace import FinitePath, has_fixed_cylinder


@dataclass(frozen=True)
class Reason:
    tag: str
    text: str


@dataclass(frozen=True)
class Verdict:
    value: str  # "yes" | "no" | "unknown"
    reasons: tuple[Reason, ...]

    def __post_init__(self):
        if self.value not in ("yes", "no", "unknown"):
            raise StructuralError(f"bad verdict value {self.value!r}")
        if not self.reasons:
            raise StructuralError("a verdict must cite at least one reason")

    @property
    def is_yes(self) -> bool:
        return self.value == "yes"

    @property
    def is_no(self) -> bool:
        return self.value == "no"


def _yes(tag: str, text: str) -> Verdict:
    return Verdict("yes", (Reason(tag, text),))


def _no(tag: str, text: str) -> Verdict:
    return Verdict("no", (Reason(tag, text),))


def _unknown(tag: str, text: str) -> Verdict:
    return Verdict("unknown", (Reason(tag, text),))


@dataclass(frozen=True)
class Caps:
    """Bounds for the semi-decidable searches."""

    state_cap: int = 64      # fixed-cylinder state exploration
    probe_exponent: int = 4  # unitary powers probed: +-1 .. +-probe_exponent


DEFAULT_CAPS = Caps()


def minimality(pair: MatrixPair) -> Verdict:
    """Exact: the action is minimal iff A is irreducible."""
    if matrices.is_irreducible(pair):
        return _yes("irreducible", "the support digraph is strongly connected")
    return _no("not-irreducible", "the support digraph is not strongly connected")


def _bool_verdict(flag: bool, name: str, yes_text: str, no_text: str) -> Verdict:
    return _yes(name, yes_text) if flag else _no(f"not-{name}", no_text)


def condition_e_verdict(pair: MatrixPair) -> Verdict:
    return _bool_verdict(
        matrices.satisfies_condition_e(pair),
        "condition-E",
        "B is nonzero on every support arc",
        "B vanishes on some support arc",
    )


def condition_l_verdict(pair: MatrixPair) -> Verdict:
    return _bool_verdict(
        matrices.satisfies_condition_l(pair),
        "condition-L",
        "every cycle of the edge graph has an exit",
        "some cycle of the edge graph is exit-free",
    )


def condition_k_verdict(pair: MatrixPair) -> Verdict:
    return _bool_verdict(
        matrices.satisfies_condition_k(pair),
        "condition-K",
        "every cycle vertex bases at least two cycles",
        "some cycle vertex bases exactly one cycle",
    )


def probe_exponents(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> list[int]:
    """Unitary powers worth probing: small values plus the denominators of
    the simple-cycle ratio products, which are the first candidates whose
    trace can stay integral around a loop."""
    values = set(range(1, caps.probe_exponent + 1))
    for verts in matrices.simple_vertex_cycles(pair):
        ratio = Fraction(1)
        for t in range(len(verts)):
            i, j = verts[t], verts[(t + 1) % len(verts)]
            ratio *= pair.ratio(i, j)
        if ratio != 0:
            values.add(ratio.denominator)
    probes = sorted(values)
    return [l for v in probes for l in (v, -v)]


@dataclass(frozen=True)
class CylinderProbeHit:
    vertex: int
    exponent: int
    witness: FinitePath | None


def _probe_fixed_cylinders(
    pair: MatrixPair, caps: Caps
) -> tuple[CylinderProbeHit | None, bool]:
    """Returns (first probe that found a fixed cylinder, all probes decided)."""
    all_decided = True
    for v in pair.vertices:
        for l in probe_exponents(pair, caps):
            res = has_fixed_cylinder(pair, v, l, caps.state_cap)
            if res.value == "yes":
                return CylinderProbeHit(v, l, res.witness), all_decided
            if res.value == "unknown":
                all_decided = False
    return None, all_decided


def _contracting_cycle_reachable(pair: MatrixPair) -> bool:
    """From every vertex, some simple cycle with |product of B/A| < 1 is
    reachable.  Looping such a cycle drives any nonzero trace value to a
    non-integer, so no fixed set can contain a cylinder."""
    contracting: set[int] = set()
    for verts in matrices.simple_vertex_cycles(pair):
        ratio = Fraction(1)
        for t in range(len(verts)):
            i, j = verts[t], verts[(t + 1) % len(verts)]
            ratio *= pair.ratio(i, j)
        if abs(ratio) < 1:
            contracting.update(verts)
    if not contracting:
        return False
    ok = set(contracting)
    changed = True
    while changed:
        changed = False
        for i in pair.vertices:
            if i not in ok and any(j in ok for j in pair.out_vertices(i)):
                ok.add(i)
                changed = True
    return ok == set(pair.vertices)


def fixed_point_escape(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> Verdict:
    """The interior-emptiness condition for unitary fixed sets: from any
    position of a fixed point, some continuation breaks integrality.

    No when a probe certifies a fixed cylinder.  Yes via the contracting
    reachable-cycle sufficiency, sound when B is nonzero on the support.
    Unknown otherwise.
    """
    hit, decided = _probe_fixed_cylinders(pair, caps)
    if hit is not None:
        return _no(
            "fixed-cylinder",
            f"u({hit.vertex})^{hit.exponent} fixes a whole cylinder "
            f"(witness prefix of length {len(hit.witness) if hit.witness else 0})",
        )
    if matrices.satisfies_condition_e(pair) and _contracting_cycle_reachable(pair):
        return _yes(
            "contracting-cycles",
            "every vertex reaches a simple cycle with |product B/A| < 1",
        )
    if decided:
        return _unknown(
            "escape-undecided",
            "no fixed cylinder found by probes, but the contracting-cycle "
            "sufficiency does not apply",
        )
    return _unknown(
        "probe-cap", "a fixed-cylinder probe hit its exploration cap"
    )


def topological_freeness(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Tri-state verdict on topological freeness of the action."""
    if not matrices.satisfies_condition_l(pair):
        return _no("condition-L-fails", "an exit-free cycle makes its fixed point isolated")
    if not matrices.satisfies_condition_e(pair):
        return _no(
            "condition-E-fails",
            "a vanishing B-entry on the support yields a fixed cylinder",
        )
    escape = fixed_point_escape(pair, caps)
    if escape.is_no:
        return Verdict("no", escape.reasons)
    if escape.is_yes:
        return Verdict(
            "yes",
            (
                Reason("condition-L", "every cycle has an exit"),
                Reason("condition-E", "B nonzero on the support"),
            )
            + escape.reasons,
        )
    return Verdict("unknown", escape.reasons)


_FIXED_POINT_READING = Reason(
    "unitary-fixed-points",
    "fixed points examined are those of vertex unitary powers and their"
    " cycle conjugates; general isotropy reduces to these",
)


def simplicity(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Under the nonvanishing condition on B, simplicity is equivalent to
    irreducibility + every cycle having an exit + the fixed-point escape
    condition.  Without it the characterization is unavailable."""
    if not matrices.satisfies_condition_e(pair):
        return Verdict(
            "unknown",
            (
                Reason(
                    "requires-condition-E",
                    "the simplicity characterization assumes B nonzero on the support",
                ),
                _FIXED_POINT_READING,
            ),
        )
    if not matrices.is_irreducible(pair):
        return Verdict(
            "no", (Reason("not-irreducible", "the action is not minimal"), _FIXED_POINT_READING)
        )
    if not matrices.satisfies_condition_l(pair):
        return Verdict(
            "no",
            (Reason("condition-L-fails", "an exit-free cycle obstructs freeness"), _FIXED_POINT_READING),
        )
    escape = fixed_point_escape(pair, caps)
    if escape.is_no:
        return Verdict("no", escape.reasons + (_FIXED_POINT_READING,))
    if escape.is_yes:
        return Verdict(
            "yes",
            (
                Reason("irreducible", "minimal"),
                Reason("condition-L", "every cycle has an exit"),
                Reason("condition-E", "B nonzero on the support"),
            )
            + escape.reasons
            + (_FIXED_POINT_READING,),
        )
    return Verdict("unknown", escape.reasons + (_FIXED_POINT_READING,))


def locally_contracting(pair: MatrixPair) -> Verdict:
    """Sufficient only: every finite path enlarges to a cycle and every cycle
    has an exit."""
    extends = matrices.every_path_extends_to_cycle(pair)
    cond_l = matrices.satisfies_condition_l(pair)
    if extends and cond_l:
        return Verdict(
            "yes",
            (
                Reason("paths-extend", "every finite path closes into a cycle"),
                Reason("condition-L", "every cycle has an exit"),
            ),
        )
    tags = []
    if not extends:
        tags.append(Reason("paths-do-not-extend", "some path cannot return to its source"))
    if not cond_l:
        tags.append(Reason("condition-L-fails", "an exit-free cycle exists"))
    tags.append(Reason("sufficiency-only", "the criterion is sufficient, not necessary"))
    return Verdict("unknown", tuple(tags))


def pure_infiniteness(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> Verdict:
    simple = simplicity(pair, caps)
    if simple.is_yes:
        return Verdict(
            "yes",
            simple.reasons + (Reason("locally-contracting", "irreducibility extends paths to exited cycles"),),
        )
    if simple.is_no:
        return Verdict(
            "no", (Reason("not-simple", "a non-simple algebra is not purely infinite simple"),)
        )
    return Verdict("unknown", simple.reasons)


def katsura_classic_check(pair: MatrixPair) -> Verdict:
    """The classical sufficient conditions: A irreducible with A[i][i] >= 2
    and B[i][i] = 1 everywhere."""
    matrices.require_valid(pair)
    problems = []
    if not matrices.is_irreducible(pair):
        problems.append(Reason("not-irreducible", "A is not irreducible"))
    for i in pair.vertices:
        if pair.a_at(i, i) < 2:
            problems.append(Reason("diagonal-A", f"A[{i}][{i}] = {pair.a_at(i, i)} < 2"))
        if pair.b_at(i, i) != 1:
            problems.append(Reason("diagonal-B", f"B[{i}][{i}] = {pair.b_at(i, i)} != 1"))
    if problems:
        return Verdict("no", tuple(problems))
    return _yes("classic-conditions", "A irreducible, A[i][i] >= 2 and B[i][i] = 1 for all i")


@dataclass(frozen=True)
class AnalysisReport:
    condition0: Verdict
    condition_e: Verdict
    irreducible: Verdict
    condition_l: Verdict
    condition_k: Verdict
    minimal: Verdict
    topologically_free: Verdict
    essentially_principal: Verdict
    hausdorff: Verdict
    simple: Verdict
    locally_contracting: Verdict
    purely_infinite_simple: Verdict
    nuclear: Verdict
    etale: Verdict
    kgroups: KTheoryResult
    notes: tuple[str, ...] = ()

    def verdict_fields(self) -> dict[str, Verdict]:
        return {
            name: value
            for name, value in self.__dict__.items()
            if isinstance(value, Verdict)
        }


def _check_consistency(report: AnalysisReport) -> None:
    if report.simple.is_yes:
        assert report.minimal.is_yes and report.condition_l.is_yes
    if report.purely_infinite_simple.is_yes:
        assert report.simple.is_yes
    if report.topologically_free.is_yes:
        assert report.essentially_principal.is_yes


def analyze(pair: MatrixPair, caps: Caps = DEFAULT_CAPS) -> AnalysisReport:
    """Full report; raises StructuralError if the pair is invalid."""
    matrices.require_valid(pair)
    cond_e = condition_e_verdict(pair)
    top_free = topological_freeness(pair, caps)
    if cond_e.is_yes:
        ess_principal = top_free
        hausdorff = _yes("condition-E", "all elements epic, so germs separate")
    else:
        ess_principal = _unknown(
            "requires-condition-E",
            "the germ-level equivalence is only available when B is nonzero on the support",
        )
        hausdorff = _unknown(
            "requires-condition-E", "Hausdorffness is only certified when condition (E) holds"
        )
    notes = []
    if all(x == 0 for row in pair.b for x in row):
        notes.append(
            "B = 0: the algebra is the Cuntz-Krieger algebra of A; "
            "the vertex unitaries collapse to projections"
        )
    report = AnalysisReport(
        condition0=_yes("condition-0", "no zero row in A and B supported inside A"),
        condition_e=cond_e,
        irreducible=_bool_verdict(
            matrices.is_irreducible(pair),
            "irreducible",
            "the support digraph is strongly connected",
            "the support digraph is not strongly connected",
        ),
        condition_l=condition_l_verdict(pair),
        condition_k=condition_k_verdict(pair),
        minimal=minimality(pair),
        topologically_free=top_free,
        essentially_principal=ess_principal,
        hausdorff=hausdorff,
        simple=simplicity(pair, caps),
        locally_contracting=locally_contracting(pair),
        purely_infinite_simple=pure_infiniteness(pair, caps),
        nuclear=_yes("always", "the algebra is nuclear for every admissible pair"),
        etale=_yes("always", "the germ groupoid is etale with second countable unit space"),
        kgroups=k_groups(pair),
        notes=tuple(notes),
    )
    _check_consistency(report)
    return report
