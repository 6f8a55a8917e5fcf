"""Rotation matrix utilities: Euler angles, quaternions, metrics.

Euler convention throughout is intrinsic Z-Y-X (yaw about z, then pitch
about y, then roll about x), i.e. ``R = Rz(yaw) @ Ry(pitch) @ Rx(roll)``.
"""

from __future__ import annotations

import math

import numpy as np

_GIMBAL_EPS = 1.0 - 1e-12


def euler_to_matrix(roll: float, pitch: float, yaw: float) -> np.ndarray:
    """Build a rotation matrix from Z-Y-X intrinsic Euler angles (radians)."""
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    )


def rotation_to_euler(rotation: np.ndarray) -> tuple[float, float, float]:
    """Decompose a rotation matrix into (roll, pitch, yaw), Z-Y-X intrinsic.

    At gimbal lock (|pitch| = pi/2) roll is set to 0 and the remaining
    freedom is folded into yaw.
    """
    r = np.asarray(rotation, dtype=float)
    sp = -r[2, 0]
    if sp >= _GIMBAL_EPS:
        return 0.0, math.pi / 2, math.atan2(-r[0, 1], r[1, 1])
    if sp <= -_GIMBAL_EPS:
        return 0.0, -math.pi / 2, math.atan2(-r[0, 1], r[1, 1])
    pitch = math.asin(max(-1.0, min(1.0, sp)))
    roll = math.atan2(r[2, 1], r[2, 2])
    yaw = math.atan2(r[1, 0], r[0, 0])
    return roll, pitch, yaw


def matrix_to_quaternion(rotation: np.ndarray) -> np.ndarray:
    """Convert a rotation matrix to a unit quaternion (w, x, y, z), w >= 0."""
    r = np.asarray(rotation, dtype=float)
    t = np.trace(r)
    if t > 0:
        s = math.sqrt(t + 1.0) * 2.0
        q = np.array(
            [0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
        )
    else:
        i = int(np.argmax(np.diag(r)))
        if i == 0:
            s = math.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2]) * 2.0
            q = np.array(
                [(r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
            )
        elif i == 1:
            s = math.sqrt(1.0 - r[0, 0] + r[1, 1] - r[2, 2]) * 2.0
            q = np.array(
                [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s]
            )
        else:
            s = math.sqrt(1.0 - r[0, 0] - r[1, 1] + r[2, 2]) * 2.0
            q = np.array(
                [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s]
            )
    q /= np.linalg.norm(q)
    if q[0] < 0:
        q = -q
    return q


def quaternion_to_matrix(q) -> np.ndarray:
    """Convert a quaternion (w, x, y, z) to a rotation matrix."""
    w, x, y, z = np.asarray(q, dtype=float) / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def axis_angle_matrix(axis, angle: float) -> np.ndarray:
    """Rotation about ``axis`` (need not be unit) by ``angle`` radians."""
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    c, s = math.cos(angle), math.sin(angle)
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + s * k + (1 - c) * (k @ k)


def geodesic_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """Angle in radians of the rotation taking ``r1`` to ``r2``."""
    c = (np.trace(np.asarray(r1).T @ np.asarray(r2)) - 1.0) / 2.0
    return math.acos(max(-1.0, min(1.0, c)))


def random_rotation(rng: np.random.Generator, max_angle: float) -> np.ndarray:
    """Uniform random axis, angle uniform in [0, max_angle]."""
    axis = rng.normal(size=3)
    while np.linalg.norm(axis) < 1e-12:
        axis = rng.normal(size=3)
    return axis_angle_matrix(axis, rng.uniform(0.0, max_angle))


def wrap_angle(a):
    """Wrap angle(s) to (-pi, pi]."""
    out = np.mod(np.asarray(a, dtype=float) + np.pi, 2 * np.pi) - np.pi
    out = np.where(out == -np.pi, np.pi, out)
    if np.ndim(a) == 0:
        return float(out)
    return out
