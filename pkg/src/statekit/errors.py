"""Exception hierarchy shared by every statekit module."""


class StatekitError(Exception):
    """Base class for all errors raised by statekit."""


class ConflictingPolarity(StatekitError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"feature {name!r} given with both polarities")


class ParseError(StatekitError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DanglingReference(StatekitError):
    def __init__(self, section, ident):
        self.section = section
        self.ident = ident
        super().__init__(f"[{section}] unresolved reference {ident!r}")


class DuplicateId(StatekitError):
    def __init__(self, section, ident):
        self.section = section
        self.ident = ident
        super().__init__(f"[{section}] duplicate id {ident!r}")


class InvalidBundle(StatekitError):
    """Raised by load_bundle when semantic validation produces diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics[:5])
        super().__init__(f"bundle failed validation: {lines}")


class NotFound(StatekitError):
    def __init__(self, ident, kind="lexeme"):
        self.ident = ident
        self.kind = kind
        super().__init__(f"{kind} {ident!r} not found")


class UnknownParadigm(NotFound):
    def __init__(self, ident):
        super().__init__(ident, "paradigm")


class UnknownContext(NotFound):
    def __init__(self, ident):
        super().__init__(ident, "syntactic context")


class UnknownCognitiveSet(NotFound):
    def __init__(self, ident):
        super().__init__(ident, "cognitive set")


class NoMarker(StatekitError):
    def __init__(self, paradigm, template):
        self.paradigm = paradigm
        self.template = template
        super().__init__(f"no marker of paradigm {paradigm!r} realizes {template}")


class AmbiguousMarker(StatekitError):
    def __init__(self, paradigm, markers):
        self.paradigm = paradigm
        self.markers = list(markers)
        ids = ", ".join(m.id for m in self.markers)
        super().__init__(f"paradigm {paradigm!r}: several markers match ({ids})")


class IrresolvableParadigm(StatekitError):
    def __init__(self, paradigm, reason):
        self.paradigm = paradigm
        self.reason = reason
        super().__init__(f"paradigm {paradigm!r} cannot be resolved: {reason}")


class VetoFired(StatekitError):
    def __init__(self, rule):
        self.rule = rule
        super().__init__(f"veto rule {rule!r} blocked the sequence")


class NoFeasibleCandidate(StatekitError):
    def __init__(self):
        super().__init__("no layer holds a candidate sharing a feature with the query")


class StageError(StatekitError):
    """Wraps an error raised inside one stage of the realization pipeline."""

    def __init__(self, stage, error):
        self.stage = stage
        self.error = error
        super().__init__(f"[{stage}] {error}")
