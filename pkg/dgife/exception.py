# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).


class DgIfeError(Exception):
    """ Base error of the solver, the CLI exits with code 1 on it """


class GeometryError(DgIfeError):
    """ The interface curve can not answer a geometric query """


class MultipleRoots(GeometryError):
    """ A segment crosses the interface more than once """

    def __init__(self, p0, p1, count):
        self.p0 = tuple(p0)
        self.p1 = tuple(p1)
        self.count = count
        super(MultipleRoots, self).__init__(
            'Segment %s-%s crosses the interface %d times' % (self.p0, self.p1, count))


class DegenerateGradient(GeometryError):
    """ The level set gradient vanishes where a normal is needed """

    def __init__(self, point, norm):
        self.point = tuple(point)
        self.norm = norm
        super(DegenerateGradient, self).__init__(
            'Level set gradient too small at %s (|grad| = %g)' % (self.point, norm))


class HypothesisViolation(DgIfeError):
    """ The mesh does not resolve the interface """

    def __init__(self, element, reason, detail=''):
        self.element = element
        self.reason = reason
        self.detail = detail
        message = 'Element %s violates %s' % (element, reason)
        if detail:
            message = '%s: %s' % (message, detail)
        super(HypothesisViolation, self).__init__(message)


class QuadratureError(DgIfeError):
    """ A quadrature rule can not be built """


class DegenerateSubPolygon(QuadratureError):
    """ A sub-polygon of a cut element has a zero-area triangle """

    def __init__(self, element, area):
        self.element = element
        self.area = area
        super(DegenerateSubPolygon, self).__init__(
            'Sub-polygon of element %s has a fan triangle of area %g' % (element, area))


class SingularLocalSystem(DgIfeError):
    """ The immersed basis system of an element is numerically singular """

    def __init__(self, element, condition):
        self.element = element
        self.condition = condition
        super(SingularLocalSystem, self).__init__(
            'Local IFE system of element %s is singular (cond = %g)' % (element, condition))


class AssemblyError(DgIfeError):
    """ The global system can not be assembled """


class MissingNeighbor(AssemblyError):
    """ An interior edge has a single owner """

    def __init__(self, edge):
        self.edge = edge
        super(MissingNeighbor, self).__init__('Interior edge %s has no second element' % edge)


class NonConformingMesh(AssemblyError):
    """ Continuous degrees of freedom need a mesh without hanging nodes """


class LinearAlgebraError(DgIfeError):
    """ A linear solve or eigen solve failed """


class SingularMatrix(LinearAlgebraError):
    """ The sparse factorization met a zero pivot """

    def __init__(self, pivot=None, detail=''):
        self.pivot = pivot
        message = 'Matrix is singular'
        if pivot is not None:
            message = '%s at pivot %s' % (message, pivot)
        if detail:
            message = '%s (%s)' % (message, detail)
        super(SingularMatrix, self).__init__(message)


class MaxIterations(LinearAlgebraError):
    """ The Krylov solver ran out of iterations """

    def __init__(self, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super(MaxIterations, self).__init__(
            'No convergence after %d iterations, relative residual %.3e' % (iterations, residual))


class Breakdown(LinearAlgebraError):
    """ The Krylov solver broke down """


class NotConverged(LinearAlgebraError):
    """ The eigen solver did not reach the requested residual """


class SingularPoint(DgIfeError):
    """ The manufactured source term is evaluated at its singular point """

    def __init__(self, point):
        self.point = tuple(point)
        super(SingularPoint, self).__init__('Source term is singular at %s' % (self.point,))


class ConfigError(DgIfeError):
    """ The run configuration is not usable """


class ParseError(ConfigError):
    """ The configuration file has a syntax error """

    def __init__(self, lineno, detail):
        self.lineno = lineno
        self.detail = detail
        super(ParseError, self).__init__('Line %s: %s' % (lineno, detail))


class ValidationError(ConfigError):
    """ A configuration value is out of its admissible range """

    def __init__(self, field, detail):
        self.field = field
        self.detail = detail
        super(ValidationError, self).__init__('%s: %s' % (field, detail))


class StageError(DgIfeError):
    """ A pipeline stage failed for one mesh """

    def __init__(self, stage, label, cause):
        self.stage = stage
        self.label = label
        self.cause = cause
        super(StageError, self).__init__('Stage %s failed for %s: %s' % (stage, label, cause))
