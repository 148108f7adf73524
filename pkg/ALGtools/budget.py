import threading

from ALGtools import exceptions


class WorkBudget:
    """
    A shared tally of work units (vectors scanned, candidates tried).

    Parameters
    ----------
    limit : int, optional
        Maximum number of units that may be spent; None means unlimited
    """
    def __init__(self, limit: int = None) -> None:
        self.limit = limit
        self.spent = 0
        self._lock = threading.Lock()

    def spend(self, units: int = 1) -> None:
        """
        Raises
        ------
        BudgetExceeded
            When the tally would pass the limit
        """
        with self._lock:
            if self.limit is not None and self.spent + units > self.limit:
                raise exceptions.BudgetExceeded(f"work budget of {self.limit} units exhausted "
                                                f"({self.spent} spent, {units} more requested)")
            self.spent += units

    @property
    def remaining(self):
        if self.limit is None:
            return None
        return self.limit - self.spent

    def __repr__(self) -> str:
        return f"WorkBudget(spent={self.spent}, limit={self.limit})"
