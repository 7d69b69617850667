"""Exception hierarchy shared by every pipeline stage."""


class T2PError(Exception):
    """Base class; ``stage`` names the pipeline stage that raised it."""

    stage = "pipeline"


class EmptyDocument(T2PError):
    stage = "summarize"


class EmptyCorpus(T2PError):
    stage = "corpus"


class UnsupportedSize(T2PError):
    stage = "corpus"


class DegenerateLabels(T2PError):
    stage = "classify"


class UnlabeledSentence(T2PError):
    stage = "classify"


class ConflictingDimensions(T2PError):
    stage = "extract"


class UnknownRoomReference(T2PError):
    stage = "extract"


class UnsupportedShape(T2PError):
    stage = "layout"


class PlacementFailure(T2PError):
    stage = "layout"

    def __init__(self, message, partial_plan=None):
        super().__init__(message)
        self.partial_plan = partial_plan


class WallOverflow(T2PError):
    stage = "layout"


class FurnitureOverflow(T2PError):
    stage = "layout"


class UnknownSymbol(T2PError):
    stage = "render"


class FormatMismatch(T2PError):
    stage = "cli"
