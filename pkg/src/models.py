"""
Pydantic models for every JSON artifact the command line writes.

Complex numbers are exported as [re, im] pairs. The schemas are printed by `hyperlink schema`.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel


class SolutionModel(BaseModel):
    """One root of the hyperbolicity relations."""
    assignment: Dict[str, List[float]]
    residual: float
    iterations: int = 0
    start_index: int = -1


class SolveDiagnosticsModel(BaseModel):
    starts: int
    converged: int
    diverged: int
    distinct: int
    best_residual: float
    cached: bool = False


class SolveResultModel(BaseModel):
    """Output of `solve`: every distinct root and which one is geometric."""
    pd: str
    solutions: List[SolutionModel]
    geometric: Optional[int] = None
    diagnostic: str = ""
    diagnostics: Optional[SolveDiagnosticsModel] = None


class VariableModel(BaseModel):
    name: str
    kind: str
    provenance: List[int]


class TermModel(BaseModel):
    coefficient: List[float]
    monomial: List[List[Any]]


class EquationModel(BaseModel):
    region: int
    index: int
    text: str
    terms: List[TermModel]


class SideModel(BaseModel):
    edge: int
    side: int
    expression: str


class EquationSystemModel(BaseModel):
    """Relations with their variables and the label on every edge side."""
    convention: Dict[str, str]
    variables: List[VariableModel]
    equations: List[EquationModel]
    sides: List[SideModel]


class ConditionVerdictModel(BaseModel):
    name: str
    verdict: str
    witnesses: List[Dict[str, Any]] = []
    message: str = ""


class ConditionsReportModel(BaseModel):
    """Output of `check`."""
    a: ConditionVerdictModel
    b: ConditionVerdictModel
    c: ConditionVerdictModel
    convexity: ConditionVerdictModel
    passed: bool


class HoroballModel(BaseModel):
    vertex: str
    center: Optional[List[float]] = None
    diameter: float
    meridian: List[float]
    infinite: bool


class HoroballConfigModel(BaseModel):
    """Output of `develop`."""
    base_region: int
    infinite_vertex: str
    horoballs: List[HoroballModel]
    null_arcs: List[List[Any]] = []
    frame_mismatch: float


class FanModel(BaseModel):
    apex: int
    triangles: List[List[int]]


class TetrahedronModel(BaseModel):
    index: int
    polyhedron: str
    face: int
    triangle: int
    vertices: List[int]
    shape: List[float]
    faces: List[List[str]]


class GluingModel(BaseModel):
    """Two tetrahedron faces glued together; permutation[i] is the image of vertex slot i."""
    face: List[str]
    tetrahedra: List[int]
    slots: List[int]
    permutation: List[int]


class TriangulationModel(BaseModel):
    """Output of `volume`."""
    cone_vertices: Dict[str, int]
    fans: Dict[str, FanModel]
    tetrahedra: List[TetrahedronModel]
    flat: List[int]
    gluings: List[GluingModel]
    volume: Optional[float] = None


class CertificateModel(BaseModel):
    """Output of `certify`."""
    conclusion: str
    verdicts: Dict[str, ConditionVerdictModel]
    tolerances: Dict[str, float]
    residual: float
    cross_ratio_deviation: Optional[float] = None
    volume: Optional[float] = None
    tetrahedra: int = 0
    flat: List[int] = []
    alternate: Optional[List[Dict[str, Any]]] = None
    alternate_agrees: Optional[bool] = None


class BraidSpecModel(BaseModel):
    k: int
    n: int
    variant: str


class BraidModel(BaseModel):
    """Output of `braid`."""
    spec: BraidSpecModel
    pd: str
    arities: Dict[str, int]
    source: str
    fallback_reason: str = ""
    closed_form_residual: float
    closed_form_notes: List[str]
    solution: SolutionModel


SCHEMAS = {
    "solution": SolveResultModel,
    "equations": EquationSystemModel,
    "conditions": ConditionsReportModel,
    "horoballs": HoroballConfigModel,
    "triangulation": TriangulationModel,
    "certificate": CertificateModel,
    "braid": BraidModel,
}


def schemas() -> Dict[str, Dict[str, Any]]:
    return {name: model.model_json_schema() for name, model in SCHEMAS.items()}
