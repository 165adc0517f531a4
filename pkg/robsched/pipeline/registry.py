NAME_TO_SOLVER_CLASS = dict()
SOLVER_NAMES = []
