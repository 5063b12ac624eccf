from dataclasses import dataclass, field
from typing import List

from bbext.data_structures import Definition


@dataclass(frozen=True)
class PropertyVerdict:
    termination: bool
    agreement: bool
    validity: bool
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.termination and self.agreement and self.validity


def check_properties(result) -> PropertyVerdict:
    """
    Termination, Agreement and Validity of a finished run under its protocol's definition.
    Reliable broadcast only requires termination when the sender is honest, and otherwise all-or-none.
    """
    details = []
    honest = sorted(result.honest)
    decided = [party for party in honest if party in result.outputs]
    undecided = [party for party in honest if party not in result.outputs]
    sender_honest = result.sender is not None and result.sender in result.honest

    if result.definition is Definition.RB and not sender_honest:
        termination = not decided or not undecided
    else:
        termination = not undecided
    if not termination:
        details.append(f"honest parties without output: {undecided}")

    values = {result.outputs[party] for party in decided}
    agreement = len(values) <= 1
    if not agreement:
        details.append(f"honest parties disagree: {len(values)} distinct outputs")

    validity = True
    if result.definition is Definition.BA:
        honest_inputs = {result.inputs.get(party) for party in honest}
        if len(honest_inputs) == 1:
            (expected,) = honest_inputs
            validity = all(result.outputs[party] == expected for party in decided)
    elif sender_honest:
        expected = result.inputs.get(result.sender)
        validity = all(result.outputs[party] == expected for party in decided)
    if not validity:
        details.append("an honest output differs from the value validity requires")
    return PropertyVerdict(termination, agreement, validity, details)
