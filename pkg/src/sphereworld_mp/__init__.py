"""Collision-free motion planning for labeled point robots in sphere worlds."""

from .collar import CollarAtlas, build_atlas, collar_coords, config_isotopy, config_retract, isotopy, retract
from .configuration import in_free_configuration_space, permute, project, separation
from .homeo import PunctureMap, build_puncture_map, config_forward, config_inverse, forward, inverse
from .paths import PiecewisePath, Segment
from .planner import Planner, plan, punctured_planner, rule_census, spread_planner
from .tc import tc_value
from .transport import TransportedPlanner, build_transported_planner, tc_report, transported_plan
from .validation import ValidationReport, validate_path
from .world import Obstacle, SphereWorld, boundary_clearance, classify, contains, validate_world

__version__ = "0.1.0"
