from typing import Dict, List, Optional

from bbext.data_structures import Role, SessionParams
from bbext.errors import InvariantViolation


class PartyProc:
    """
    Protocol state of one party: happy flag, output slot, current phase and the artifacts it collected.
    The output slot is written at most once and the happy flag only ever goes from 0 to 1.
    """

    def __init__(self, party: int, params: SessionParams, role: Role):
        self.party = party
        self.params = params
        self.role = role
        self.phase = "init"
        self.happy = False
        self.happy_since: Optional[int] = None
        self.decided = False
        self.output: Optional[bytes] = None
        self.decided_at: Optional[int] = None
        self.packages: Dict[int, object] = {}
        self.certificates: List[object] = []

    def set_happy(self, happy: bool, tick: int):
        if self.happy and not happy:
            raise InvariantViolation("happy flag reset from 1 to 0", self.party)
        if happy and not self.happy:
            self.happy = True
            self.happy_since = tick

    def set_output(self, value: Optional[bytes], tick: int):
        if self.decided:
            raise InvariantViolation("output slot written twice", self.party)
        self.decided = True
        self.output = value
        self.decided_at = tick

    def __repr__(self):
        return (
            f"PartyProc(party={self.party}, role={self.role.value}, phase={self.phase}, happy={int(self.happy)}, "
            f"decided={self.decided})"
        )
