from typing import Dict, List, Optional

from pydantic import BaseModel


class VerifyCell(BaseModel):
    key: str                            # row label, e.g. "45" or "A3"
    field: str                          # checked column
    expected: str
    actual: str
    passed: bool
    printed: Optional[str] = None       # published value when it differs from expected


class TargetReport(BaseModel):
    target: str
    cells: List[VerifyCell]
    passed: int
    failed: int
    errata: List[str] = []


class VerifyRecord(BaseModel):
    command: str = "verify"
    case_id: Optional[int] = None
    inputs: Dict[str, str]
    status: str                         # "pass" | "fail"
    reports: List[TargetReport]
