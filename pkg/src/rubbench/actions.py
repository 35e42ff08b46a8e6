"""Class schema of the synthetic rubbing-action corpus.

Five hand-rubbing actions form the label space. Four of them have a
"dual" pose obtained by interchanging the two hands; rubbing with
fingers interlaced is its own mirror and has none. Each action animates
with either a circular or a back-and-forth rubbing motion.
"""

from dataclasses import dataclass

CIRCULAR = "circular"
BACK_AND_FORTH = "back_and_forth"


@dataclass(frozen=True)
class ActionClass:
    id: str
    has_dual_pose: bool
    motion_pattern: str


ACTIONS: dict[str, ActionClass] = {
    a.id: a
    for a in (
        ActionClass("rub_palm", True, CIRCULAR),
        ActionClass("rub_back", True, BACK_AND_FORTH),
        ActionClass("rub_fingers_interlaced", False, BACK_AND_FORTH),
        ActionClass("rub_thumb", True, CIRCULAR),
        ActionClass("rub_tips", True, CIRCULAR),
    )
}

# Canonical label order; index into this tuple is the integer class label.
ACTION_IDS: tuple[str, ...] = tuple(ACTIONS)

NUM_FRAMES = 20


def label_index(action_id: str) -> int:
    return ACTION_IDS.index(action_id)


def get_action(action_id: str) -> ActionClass:
    try:
        return ACTIONS[action_id]
    except KeyError:
        raise KeyError(f"unknown action id {action_id!r}; expected one of {list(ACTIONS)}") from None
