"""Defines guard decorators used by feature selectors."""

from functools import wraps

from smisel.core.contract.dto.dataset import Dataset, TaskKind
from smisel.core.contract.error import SelectionError


def k_in_range():
    """Check that a selector is asked for between 1 and m features."""

    def decorator(func):
        @wraps(func)
        def wrapper(self, data: Dataset, k: int, *args, **kwargs):
            if not 1 <= k <= data.m:
                raise SelectionError(f"k must lie in 1..{data.m}, got {k}.")
            return func(self, data, k, *args, **kwargs)

        return wrapper

    return decorator


def task_required(kind: TaskKind, method: str):
    """Check that a selector runs on the task kind it supports."""

    def decorator(func):
        @wraps(func)
        def wrapper(self, data: Dataset, *args, **kwargs):
            if data.task.kind != kind:
                raise SelectionError(f"{method} requires a {kind.value} task.")
            return func(self, data, *args, **kwargs)

        return wrapper

    return decorator


def binary_or_regression_required(method: str):
    """Check for a regression task or a classification task with two classes."""

    def decorator(func):
        @wraps(func)
        def wrapper(self, data: Dataset, *args, **kwargs):
            if data.task.is_classification and data.task.n_classes > 2:
                raise SelectionError(
                    f"{method} does not support multiclass tasks"
                    f" ({data.task.n_classes} classes)."
                )
            return func(self, data, *args, **kwargs)

        return wrapper

    return decorator
