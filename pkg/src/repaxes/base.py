"""Minimal estimator plumbing: scikit-learn style get_params/set_params.

Estimators here duck-type the scikit-learn API (``fit``/``transform``/
``predict`` plus parameter introspection) without importing scikit-learn,
so probes and extractors compose with pipelines that expect it.
"""

import inspect


class ParamsMixin:
    """get_params/set_params driven by the subclass ``__init__`` signature."""

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [
            name
            for name, p in sig.parameters.items()
            if name != "self" and p.kind not in (p.VAR_POSITIONAL, p.VAR_KEYWORD)
        ]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValueError(f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"
