"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``kind`` so the CLI can report a
structured error object without string matching.
"""


class ContigError(Exception):
    kind = "error"

    def to_dict(self):
        return {"kind": self.kind, "message": str(self)}


class EmptyFacet(ContigError):
    kind = "EmptyFacet"


class EmptyComplex(ContigError):
    kind = "EmptyComplex"


class UnknownVertex(ContigError):
    kind = "UnknownVertex"


class VertexBudgetExceeded(ContigError):
    kind = "VertexBudgetExceeded"


class EnumerationBudgetExceeded(ContigError):
    kind = "EnumerationBudgetExceeded"


class NeighborBudgetExceeded(ContigError):
    kind = "NeighborBudgetExceeded"


class MissingVertex(ContigError):
    kind = "MissingVertex"


class NotSimplicial(ContigError):
    kind = "NotSimplicial"

    def __init__(self, face_labels, image_labels):
        self.face = tuple(face_labels)
        self.image = tuple(image_labels)
        super().__init__(
            "image of {%s} is {%s}, which is not a face of the codomain"
            % (",".join(self.face), ",".join(self.image))
        )

    def to_dict(self):
        d = super().to_dict()
        d["witness"] = list(self.face)
        d["image"] = list(self.image)
        return d


class NotASubcomplex(ContigError):
    kind = "NotASubcomplex"


class DomainMismatch(ContigError):
    kind = "DomainMismatch"


class IndexOutOfRange(ContigError):
    kind = "IndexOutOfRange"


class ParseError(ContigError):
    kind = "ParseError"

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += str(path)
        if line is not None:
            where += ":%d" % line
            if column is not None:
                where += ":%d" % column
        super().__init__(f"{where}: {message}" if where else message)

    def to_dict(self):
        d = super().to_dict()
        d.update(line=self.line, column=self.column)
        return d
