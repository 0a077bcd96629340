from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict


# Raw catalog record, one per data line; values are still text at this stage
class CatalogRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int                                 # Classification number
    T: str                                  # Fiber root lattices
    EK_free_gram: str                       # Lattice of E(K) modulo torsion
    torsion: str = "trivial"                # Torsion descriptor
    mu: Optional[str] = None                # Minimal norm "p/q"
    c_max: Optional[str] = None             # Optional stored bounds
    c_min: Optional[str] = None
    delta: Optional[str] = None
    fibers: Optional[str] = None            # Optional Kodaira configuration
    witness: Optional[str] = None           # Optional section witnesses joined by "&"
    provenance: str                         # Source tag(s)
    note: Optional[str] = None


class CaseSummary(BaseModel):
    id: int
    T: str
    rank: int
    torsion: str
    mu: Optional[str]


class CaseAnalysis(BaseModel):
    command: str = "analyze"
    case_id: Optional[int]
    inputs: Dict[str, str]
    status: str = "ok"
    T: str
    fibers: Optional[str]
    rank: Optional[int]
    torsion: Optional[str]
    mu: Optional[str]
    c_max: str
    c_min: str
    delta: str
    narrow_gram: Optional[List[List[str]]]
    narrow_det: Optional[str]
    q_x: Optional[List[List[str]]]
    provenance: Dict[str, str]
    matches: List[int] = []
