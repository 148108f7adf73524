from __future__ import annotations
from typing import TYPE_CHECKING


# Prevent recursive imports
if TYPE_CHECKING:
    import ALGtools.algebras as algebras


class GenericVisitor:
    """
    Traversal over algebra specs. Each spec's `accept` calls the visit* method
    named after its class; doubled specs recurse into their base.
    """
    def __init__(self) -> None:
        self.running = False
        self.stack = []

    @property
    def current_depth(self) -> int:
        """
        Current recursion depth of the traversal, including the root algebra
        currently being visited (i.e. at the root spec current_depth == 1)
        """
        return len(self.stack)

    def run(self, spec: algebras.AlgebraSpec):
        if self.running:
            raise RuntimeError("Visitor is already running")

        self.running = True
        try:
            return self.visit(spec)
        finally:
            self.running = False

    def visit(self, spec: algebras.AlgebraSpec):
        if spec is None:
            return spec

        self.stack.append(spec)
        result = spec.accept(self)
        self.stack.pop()
        return result

    def visitSpec(self, spec: algebras.AlgebraSpec):
        raise NotImplementedError

    def visitM2Algebra(self, spec: algebras.M2Algebra):
        return self.visitSpec(spec)

    def visitQuaternionAlgebra(self, spec: algebras.QuaternionAlgebra):
        return self.visitSpec(spec)

    def visitZornAlgebra(self, spec: algebras.ZornAlgebra):
        return self.visitSpec(spec)

    def visitDoubledAlgebra(self, spec: algebras.DoubledAlgebra):
        return self.visitSpec(spec)


class SpecSerializer(GenericVisitor):
    """
    Visitor producing the JSON form of an algebra description file.
    The ring is only written at the top level.
    """
    def visitSpec(self, spec: algebras.AlgebraSpec):
        return self.with_ring(spec, {'kind': spec.kind})

    def with_ring(self, spec: algebras.AlgebraSpec, body: dict) -> dict:
        if self.current_depth > 1:
            return body
        return {'ring': str(spec.ring), **body}

    def visitQuaternionAlgebra(self, spec: algebras.QuaternionAlgebra):
        return self.with_ring(spec, {'kind': spec.kind, 'a': str(spec.a), 'b': str(spec.b)})

    def visitDoubledAlgebra(self, spec: algebras.DoubledAlgebra):
        return self.with_ring(spec, {'kind': spec.kind,
                                     'base': self.visit(spec.base),
                                     'lambda': str(spec.lam)})


class SpecDescriber(GenericVisitor):
    """
    Visitor producing short descriptors such as `doubled(quaternion(-1,-1),-1)/Q`,
    used in reports and tables.
    """
    def suffix(self, spec: algebras.AlgebraSpec) -> str:
        return f'/{spec.ring}' if self.current_depth == 1 else ''

    def visitSpec(self, spec: algebras.AlgebraSpec):
        return spec.kind + self.suffix(spec)

    def visitQuaternionAlgebra(self, spec: algebras.QuaternionAlgebra):
        return f'{spec.kind}({spec.a},{spec.b})' + self.suffix(spec)

    def visitDoubledAlgebra(self, spec: algebras.DoubledAlgebra):
        return f'{spec.kind}({self.visit(spec.base)},{spec.lam})' + self.suffix(spec)
