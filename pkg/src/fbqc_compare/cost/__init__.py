from .diagram import SpiderDiagram, diagram_from_graph, encoded_diagram
from .metrics import PhotonMetric, photons_per_encoded_fusion
from .schedule import (InvalidSchedule, Leaf, Merge, apply_merge, lower_bound, produced_state,
                       schedule_cost, simulate, tree_stats, validate_schedule)
from .search import ScheduleResult, SearchBudgetExceeded, anneal_schedule, exact_schedule, optimize_schedule
