"""Exception hierarchy shared by every module."""


class DeflateKitError(Exception):
    pass


class MalformedDocument(DeflateKitError):
    pass


class PolygonError(DeflateKitError):
    pass


class TooFewVertices(PolygonError):
    pass


class DuplicateVertex(PolygonError):
    pass


class NotSimple(PolygonError):
    def __init__(self, edge_a: int, edge_b: int):
        super().__init__(f"edges {edge_a} and {edge_b} intersect")
        self.edges = (edge_a, edge_b)


class CollinearTriple(PolygonError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is collinear with its neighbours")
        self.vertex = vertex


class NotGeneralPosition(PolygonError):
    def __init__(self, witness):
        super().__init__(f"polygon is not in general position: {witness}")
        self.witness = witness


class NotDeflated(DeflateKitError):
    pass


class SingleTriangle(DeflateKitError):
    pass


class DegenerateQuadrilateral(DeflateKitError):
    pass


class DualError(DeflateKitError):
    pass


class BadDegrees(DualError):
    pass


class UndirectedEdgeOnPath(DualError):
    pass


class UndirectedNonTerminalEdge(DualError):
    pass


class IllegalPath(DualError):
    def __init__(self, path):
        super().__init__(f"illegal path {list(path)}")
        self.path = tuple(path)


class DualMismatch(DeflateKitError):
    pass


class RadiusSearchFailed(DeflateKitError):
    pass


class NonSimpleFrame(DeflateKitError):
    def __init__(self, frame: int, edges: tuple[int, int]):
        super().__init__(f"frame {frame} is not simple: edges {edges[0]} and {edges[1]} intersect")
        self.frame = frame
        self.edges = edges


class GridExhausted(DeflateKitError):
    pass
