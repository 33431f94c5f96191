import numpy as np
import pytest

from mesh_dispatch.exceptions import ConvergenceError
from mesh_dispatch.solver import QuadraticProgram, project_polytope, solve_qp


BOX_G = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
BOX_H = np.array([1.0, 0.0, 1.0, 0.0])


def test_active_bound():
    qp = QuadraticProgram(H=np.array([[1.0]]), g=np.array([-3.0]),
                          G=np.array([[1.0]]), h=np.array([1.0]))
    result = solve_qp(qp)
    assert result.polished
    assert result.x[0] == 1.0, "Active bound shall be met exactly"
    assert result.z[0] == pytest.approx(2.0)
    assert result.gap == 0.0
    assert qp.value(result.x) == pytest.approx(-2.5)


def test_inactive_bound():
    qp = QuadraticProgram(H=np.array([[2.0]]), g=np.array([-2.0]),
                          G=np.array([[1.0]]), h=np.array([5.0]))
    result = solve_qp(qp)
    assert result.x[0] == pytest.approx(1.0, abs=1e-10)
    assert result.z[0] == pytest.approx(0.0, abs=1e-8)


def test_equality_constraint():
    qp = QuadraticProgram(H=np.eye(2), g=np.zeros(2), G=-np.eye(2),
                          h=np.zeros(2), A=np.array([[1.0, 1.0]]),
                          b=np.array([2.0]))
    result = solve_qp(qp)
    assert np.allclose(result.x, [1.0, 1.0], atol=1e-10)
    assert result.y[0] == pytest.approx(-1.0, abs=1e-8)


def test_box_corner():
    qp = QuadraticProgram(H=np.eye(2), g=np.array([-4.0, 2.0]), G=BOX_G,
                          h=BOX_H)
    result = solve_qp(qp)
    assert np.allclose(result.x, [1.0, 0.0], atol=1e-12)
    assert np.all(result.z >= 0.0)
    assert result.iterations >= 1


def test_iteration_cap():
    qp = QuadraticProgram(H=np.eye(2), g=np.array([-4.0, 2.0]), G=BOX_G,
                          h=BOX_H)
    with pytest.raises(ConvergenceError) as excinfo:
        solve_qp(qp, max_iter=1)
    assert str(excinfo.value) == \
        'Interior-point method didn\'t converge in 1 iterations'
    assert excinfo.value.iterations == 1
    assert excinfo.value.best is not None


def test_project_polytope():
    inside = np.array([0.5, 0.25])
    projected = project_polytope(inside, BOX_G, BOX_H)
    assert np.array_equal(projected, inside)
    assert projected is not inside

    assert np.allclose(project_polytope([2.0, 0.5], BOX_G, BOX_H),
                       [1.0, 0.5])
    assert np.allclose(project_polytope([2.0, -3.0], BOX_G, BOX_H),
                       [1.0, 0.0])
    assert np.allclose(project_polytope([-1.0, 0.5], BOX_G, BOX_H),
                       [0.0, 0.5])


def test_project_simplex_face():
    # x + y <= 1 with x, y >= 0
    G = np.array([[1.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    h = np.array([1.0, 0.0, 0.0])
    assert np.allclose(project_polytope([1.0, 1.0], G, h), [0.5, 0.5])
    assert np.allclose(project_polytope([3.0, 0.0], G, h), [1.0, 0.0])


def test_singular_newton_system():
    # x2 appears nowhere: H, G and g all leave it free
    qp = QuadraticProgram(H=np.diag([1.0, 0.0]), g=np.array([-3.0, 0.0]),
                          G=np.array([[1.0, 0.0]]), h=np.array([1.0]))
    result = solve_qp(qp)
    assert result.x[0] == 1.0
    assert result.x[1] == pytest.approx(0.0, abs=1e-10)
    assert result.z[0] == pytest.approx(2.0)


def test_singular_newton_system_with_equality():
    qp = QuadraticProgram(H=np.diag([1.0, 0.0, 0.0]),
                          g=np.array([-3.0, 0.0, 0.0]),
                          G=np.array([[1.0, 0.0, 0.0]]), h=np.array([1.0]),
                          A=np.array([[0.0, 1.0, 1.0]]), b=np.array([2.0]))
    result = solve_qp(qp)
    assert result.x[0] == pytest.approx(1.0)
    assert result.x[1] + result.x[2] == pytest.approx(2.0)
