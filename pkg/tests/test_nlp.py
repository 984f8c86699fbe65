import numpy as np
import pytest
import scipy.sparse as sp
from scipy.optimize import minimize

from uniwheel.nlp import (SqpProblem, SqpSettings, least_squares_objective,
                          quadratic_objective)


def test_unconstrained_quadratic():
    P = sp.diags([2.0, 4.0]).tocsc()
    q = np.array([-2.0, -8.0])
    prob = SqpProblem(2, quadratic_objective(P, q))
    res = prob.solve(np.zeros(2))
    assert res.status == "optimal"
    assert np.allclose(res.z, [1.0, 2.0], atol=1e-6)


def test_equality_constrained_quadratic():
    # min x^2 + y^2 s.t. x + y = 1 -> (0.5, 0.5)
    P = sp.eye(2).tocsc() * 2

    def cons(z):
        return np.array([z[0] + z[1] - 1.0]), sp.csc_matrix([[1.0, 1.0]])

    prob = SqpProblem(2, quadratic_objective(P, np.zeros(2)), constraints=cons)
    res = prob.solve(np.array([3.0, -5.0]))
    assert res.status == "optimal"
    assert np.allclose(res.z, [0.5, 0.5], atol=1e-7)
    assert res.constraint_violation <= 1e-8


def test_bounds_active():
    P = sp.eye(2).tocsc()
    q = np.array([-10.0, 0.5])
    prob = SqpProblem(2, quadratic_objective(P, q),
                      bounds=(np.array([-1.0, -1.0]), np.array([1.0, 1.0])))
    res = prob.solve(np.zeros(2))
    assert res.status == "optimal"
    assert np.allclose(res.z, [1.0, -0.5], atol=1e-6)


def test_rosenbrock_least_squares():
    # residuals (1-x, 10(y-x^2)), solution (1, 1)
    def residual(z):
        r = np.array([1.0 - z[0], 10.0 * (z[1] - z[0] ** 2)])
        J = sp.csc_matrix(np.array([[-1.0, 0.0], [-20.0 * z[0], 10.0]]))
        return r, J

    prob = SqpProblem(2, least_squares_objective(residual))
    res = prob.solve(np.array([-1.2, 1.0]))
    assert res.status == "optimal"
    assert np.allclose(res.z, [1.0, 1.0], atol=1e-6)


def test_nonlinear_equality_matches_scipy():
    # min (x-2)^2 + (y-1)^2 + (w+1)^2  s.t.  x^2 + y^2 + w^2 = 1
    target = np.array([2.0, 1.0, -1.0])

    def objective_np(z):
        return np.sum((z - target) ** 2)

    def residual(z):
        return z - target, sp.eye(3, format="csc")

    def cons(z):
        return (np.array([z @ z - 1.0]),
                sp.csc_matrix(2.0 * z.reshape(1, 3)))

    prob = SqpProblem(3, least_squares_objective(residual), constraints=cons,
                      settings=SqpSettings(merit_penalty=1.0))
    res = prob.solve(np.array([1.0, 0.0, 0.0]))
    ref = minimize(objective_np, np.array([1.0, 0.0, 0.0]),
                   constraints={"type": "eq", "fun": lambda z: z @ z - 1.0},
                   method="SLSQP", tol=1e-12)
    assert res.status == "optimal"
    assert abs(np.linalg.norm(res.z) - 1.0) <= 1e-8
    assert res.objective * 2 == pytest.approx(ref.fun, abs=1e-6)


def test_infeasible_equalities_fall_back_to_soft():
    # x = 0 and x = 1 cannot both hold; the L1 relaxation splits the gap
    def cons(z):
        C = sp.csc_matrix(np.array([[1.0], [1.0]]))
        return np.array([z[0], z[0] - 1.0]), C

    prob = SqpProblem(1, quadratic_objective(sp.eye(1).tocsc() * 1e-6,
                                             np.zeros(1)),
                      constraints=cons)
    res = prob.solve(np.array([0.3]))
    assert res.used_soft_constraints
    assert 0.0 <= res.z[0] <= 1.0


def test_linear_inequalities():
    # min ||z||^2 with z1 + z2 >= 2
    P = sp.eye(2).tocsc() * 2
    G = sp.csc_matrix([[1.0, 1.0]])
    prob = SqpProblem(2, quadratic_objective(P, np.zeros(2)),
                      lin_ineq=(G, np.array([2.0]), np.array([np.inf])))
    res = prob.solve(np.zeros(2))
    assert res.status == "optimal"
    assert np.allclose(res.z, [1.0, 1.0], atol=1e-6)
