"""Balancing feedback, open-loop maneuvers, and the mode supervisor."""

from .feedback import (GainMatrix, PATTERN_D, PATTERN_R,
                       ProjectionLostStabilityError, RiccatiError,
                       controllable_subspace, lqr_init, state_feedback)
from .maneuvers import (ManeuverSequence, half_flip, standup_pitch,
                        standup_roll)
from .supervisor import (Command, Mode, SupervisorConfig, SupervisorState,
                         contact_switch_remap, make_supervisor, supervise)
