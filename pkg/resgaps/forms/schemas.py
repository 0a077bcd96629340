from typing import Dict, List, Optional

from pydantic import BaseModel


class RepresentationRecord(BaseModel):
    command: str = "represent"
    case_id: Optional[int]
    inputs: Dict[str, str]
    status: str                         # "represented" | "not-represented"
    form: List[List[str]]
    divisor: int = 1
    target: int
    witness: Optional[List[int]] = None
