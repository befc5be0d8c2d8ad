# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep and evaluator kernels.

Loop translations of the reference formulas in ``rolepso.problems.functions``
and of the role arithmetic in ``rolepso.roles``; dispatch indices must match
the Python-side registry order (asserted by the adapter at import).
"""

from libc.math cimport M_E, M_PI, cos, exp, fabs, fmod, isfinite, pow, sin, sqrt

ROLE_ORDER = [
    "standard", "rebel", "rejector", "contrarian", "defeatist", "eschewer",
    "escapist", "anarchic", "amnesiac", "erratic", "wanderer", "drifter",
]

BASE_ORDER = [
    "sphere", "rastrigin", "ackley", "alpine1", "crowned_cross", "egg_holder",
    "expanded_schaffer6", "schaffer1", "schaffer2", "schaffer3", "schaffer4",
    "schmidt_vetters", "lennard_jones", "michalewicz", "mishra3", "mishra4",
    "modified_rosenbrock2", "bent_cigar", "discus", "elliptic", "salomon",
    "schwefel220", "schwefel236", "schwefel206", "schwefel_sine", "schaffer_f7",
    "hgbat", "happycat", "weierstrass", "shubert3", "shubert4", "sine_envelope",
    "stochastic", "stretched_v", "styblinski_tang",
]

cdef enum Role:
    R_STANDARD
    R_REBEL
    R_REJECTOR
    R_CONTRARIAN
    R_DEFEATIST
    R_ESCHEWER
    R_ESCAPIST
    R_ANARCHIC
    R_AMNESIAC
    R_ERRATIC
    R_WANDERER
    R_DRIFTER

cdef enum Base:
    B_SPHERE
    B_RASTRIGIN
    B_ACKLEY
    B_ALPINE1
    B_CROWNED_CROSS
    B_EGG_HOLDER
    B_EXPANDED_SCHAFFER6
    B_SCHAFFER1
    B_SCHAFFER2
    B_SCHAFFER3
    B_SCHAFFER4
    B_SCHMIDT_VETTERS
    B_LENNARD_JONES
    B_MICHALEWICZ
    B_MISHRA3
    B_MISHRA4
    B_MODIFIED_ROSENBROCK2
    B_BENT_CIGAR
    B_DISCUS
    B_ELLIPTIC
    B_SALOMON
    B_SCHWEFEL220
    B_SCHWEFEL236
    B_SCHWEFEL206
    B_SCHWEFEL_SINE
    B_SCHAFFER_F7
    B_HGBAT
    B_HAPPYCAT
    B_WEIERSTRASS
    B_SHUBERT3
    B_SHUBERT4
    B_SINE_ENVELOPE
    B_STOCHASTIC
    B_STRETCHED_V
    B_STYBLINSKI_TANG

cdef double TWO_PI = 6.283185307179586476925286766559
cdef double SCHWEFEL_OFFSET = 420.9687462275036
cdef double SCHWEFEL_BIAS = 418.9828872724338


cdef double f_sphere(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(d):
        acc += z[i] * z[i]
    return acc


cdef double f_rastrigin(const double* z, int d) noexcept nogil:
    cdef double acc = 10.0 * d
    cdef int i
    for i in range(d):
        acc += z[i] * z[i] - 10.0 * cos(TWO_PI * z[i])
    return acc


cdef double f_ackley(const double* z, int d) noexcept nogil:
    cdef double s1 = 0.0, s2 = 0.0
    cdef int i
    for i in range(d):
        s1 += z[i] * z[i]
        s2 += cos(TWO_PI * z[i])
    return -20.0 * exp(-0.2 * sqrt(s1 / d)) - exp(s2 / d) + 20.0 + M_E


cdef double f_alpine1(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(d):
        acc += fabs(z[i] * sin(z[i]) + 0.1 * z[i])
    return acc


cdef double f_crowned_cross(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v, r, t
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        r = sqrt(u * u + v * v)
        t = fabs(sin(u) * sin(v)) * exp(fabs(100.0 - r / M_PI))
        acc += 1e-4 * pow(t + 1.0, 0.1)
    return acc


cdef double f_egg_holder(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        acc += -(v + 47.0) * sin(sqrt(fabs(v + 0.5 * u + 47.0))) \
               - u * sin(sqrt(fabs(u - (v + 47.0))))
    return acc


cdef inline double schaffer6_term(double u, double v) noexcept nogil:
    cdef double s = u * u + v * v
    cdef double sn = sin(sqrt(s))
    cdef double den = 1.0 + 0.001 * s
    return 0.5 + (sn * sn - 0.5) / (den * den)


cdef double f_expanded_schaffer6(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(d - 1):
        acc += schaffer6_term(z[i], z[i + 1])
    acc += schaffer6_term(z[d - 1], z[0])
    return acc


cdef double f_schaffer1(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, s, sn, den
    cdef int i
    for i in range(d - 1):
        s = z[i] * z[i] + z[i + 1] * z[i + 1]
        sn = sin(s * s)
        den = 1.0 + 0.001 * s
        acc += 0.5 + (sn * sn - 0.5) / (den * den)
    return acc


cdef double f_schaffer2(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v, s, sn, den
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        s = u * u + v * v
        sn = sin(u * u - v * v)
        den = 1.0 + 0.001 * s
        acc += 0.5 + (sn * sn - 0.5) / (den * den)
    return acc


cdef double f_schaffer3(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v, s, sn, den
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        s = u * u + v * v
        sn = sin(cos(fabs(u * u - v * v)))
        den = 1.0 + 0.001 * s
        acc += 0.5 + (sn * sn - 0.5) / (den * den)
    return acc


cdef double f_schaffer4(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v, s, cn, den
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        s = u * u + v * v
        cn = cos(sin(fabs(u * u - v * v)))
        den = 1.0 + 0.001 * s
        acc += 0.5 + (cn * cn - 0.5) / (den * den)
    return acc


cdef double f_schmidt_vetters(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, a, b, c, diff, ratio
    cdef int i
    for i in range(d - 2):
        a = z[i]; b = z[i + 1]; c = z[i + 2]
        diff = a - b
        ratio = (a + b) / (b + 1e-16)
        acc += 1.0 / (1.0 + diff * diff) \
               + sin(0.5 * (M_PI * b + c)) \
               + exp(-((ratio - 2.0) * (ratio - 2.0)))
    return acc


cdef double f_lennard_jones(const double* z, int d) noexcept nogil:
    cdef int atoms = d / 3
    cdef double acc = 0.0, dx, dy, dz, r2, s
    cdef int i, j
    for i in range(atoms - 1):
        for j in range(i + 1, atoms):
            dx = z[3 * i] - z[3 * j]
            dy = z[3 * i + 1] - z[3 * j + 1]
            dz = z[3 * i + 2] - z[3 * j + 2]
            r2 = dx * dx + dy * dy + dz * dz
            s = 1.0 / (r2 * r2 * r2 + 1e-12)
            acc += s * s - 2.0 * s
    return acc


cdef double f_michalewicz(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, t, t2, t4, t8, t16
    cdef int i
    for i in range(d):
        t = sin((i + 1) * z[i] * z[i] / M_PI)
        t2 = t * t
        t4 = t2 * t2
        t8 = t4 * t4
        t16 = t8 * t8
        acc -= sin(z[i]) * (t16 * t4)
    return acc


cdef double f_mishra3(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        acc += sqrt(fabs(cos(sqrt(u * u + v * v)))) + 0.01 * (u + v)
    return acc


cdef double f_mishra4(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        acc += sqrt(fabs(sin(sqrt(u * u + v * v)))) + 0.01 * (u + v)
    return acc


cdef double f_modified_rosenbrock2(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v, t1, t2
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        t1 = v - u * u
        t2 = 1.0 - u
        acc += 74.0 + 100.0 * t1 * t1 + t2 * t2 \
               - 400.0 * exp(-((u + 1.0) * (u + 1.0) + (v + 1.0) * (v + 1.0)) / 0.1)
    return acc


cdef double f_bent_cigar(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(1, d):
        acc += z[i] * z[i]
    return z[0] * z[0] + 1e6 * acc


cdef double f_discus(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(1, d):
        acc += z[i] * z[i]
    return 1e6 * z[0] * z[0] + acc


cdef double f_elliptic(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef double w = 1.0
    cdef double ratio = pow(10.0, 6.0 / (d - 1))
    cdef int i
    for i in range(d):
        acc += w * z[i] * z[i]
        w *= ratio
    return acc


cdef double f_salomon(const double* z, int d) noexcept nogil:
    cdef double s = 0.0
    cdef int i
    for i in range(d):
        s += z[i] * z[i]
    cdef double r = sqrt(s)
    return 1.0 - cos(TWO_PI * r) + 0.1 * r


cdef double f_schwefel220(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(d):
        acc += fabs(z[i])
    return acc


cdef double f_schwefel236(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, u, v
    cdef int i
    for i in range(d - 1):
        u = z[i]; v = z[i + 1]
        acc += -u * v * (72.0 - 2.0 * u - 2.0 * v)
    return acc


cdef double f_schwefel206(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, a, b
    cdef int i
    for i in range(d - 1):
        a = fabs(z[i] + 2.0 * z[i + 1] - 7.0)
        b = fabs(2.0 * z[i] + z[i + 1] - 5.0)
        acc += a if a > b else b
    return acc


cdef double f_schwefel_sine(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, y, w
    cdef int i
    for i in range(d):
        y = z[i] + SCHWEFEL_OFFSET
        if y > 500.0:
            w = 500.0 - fmod(y, 500.0)
            acc += w * sin(sqrt(fabs(w))) - (y - 500.0) * (y - 500.0) / (10000.0 * d)
        elif y < -500.0:
            w = fmod(fabs(y), 500.0) - 500.0
            acc += w * sin(sqrt(fabs(w))) - (y + 500.0) * (y + 500.0) / (10000.0 * d)
        else:
            acc += y * sin(sqrt(fabs(y)))
    return SCHWEFEL_BIAS * d - acc


cdef double f_schaffer_f7(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, s, root, t
    cdef int i
    for i in range(d - 1):
        s = sqrt(z[i] * z[i] + z[i + 1] * z[i + 1])
        root = sqrt(s)
        t = sin(50.0 * pow(s, 0.2))
        acc += root + root * t * t
    acc /= d - 1
    return acc * acc


cdef double f_hgbat(const double* z, int d) noexcept nogil:
    cdef double r2 = 0.0, s = 0.0, u
    cdef int i
    for i in range(d):
        u = z[i] - 1.0
        r2 += u * u
        s += u
    return sqrt(fabs(r2 * r2 - s * s)) + (0.5 * r2 + s) / d + 0.5


cdef double f_happycat(const double* z, int d) noexcept nogil:
    cdef double r2 = 0.0, s = 0.0, u
    cdef int i
    for i in range(d):
        u = z[i] - 1.0
        r2 += u * u
        s += u
    return pow(fabs(r2 - d), 0.25) + (0.5 * r2 + s) / d + 0.5


cdef double f_weierstrass(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, base = 0.0, ak, bk, zi
    cdef int i, k
    ak = 1.0
    bk = 1.0
    for k in range(21):
        base += ak * cos(M_PI * bk)
        ak *= 0.5
        bk *= 3.0
    for i in range(d):
        zi = z[i] + 0.5
        ak = 1.0
        bk = 1.0
        for k in range(21):
            acc += ak * cos(TWO_PI * bk * zi)
            ak *= 0.5
            bk *= 3.0
    return acc - d * base


cdef double f_shubert3(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i, j
    for i in range(d):
        for j in range(1, 6):
            acc += j * sin((j + 1) * z[i] + j)
    return acc


cdef double f_shubert4(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0
    cdef int i, j
    for i in range(d):
        for j in range(1, 6):
            acc += j * cos((j + 1) * z[i] + j)
    return acc


cdef double f_sine_envelope(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, s, sn, den
    cdef int i
    for i in range(d - 1):
        s = z[i] * z[i] + z[i + 1] * z[i + 1]
        sn = sin(sqrt(s))
        den = 1.0 + 0.001 * s
        acc += (sn * sn - 0.5) / (den * den) + 0.5
    return acc


cdef double f_stochastic(const double* z, int d, const double* w) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(d):
        acc += w[i] * fabs(z[i] - 1.0 / (i + 1))
    return acc


cdef double f_stretched_v(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, t, sn
    cdef int i
    for i in range(d - 1):
        t = z[i] * z[i] + z[i + 1] * z[i + 1]
        sn = sin(50.0 * pow(t, 0.1))
        acc += pow(t, 0.25) * (sn * sn + 0.1)
    return acc


cdef double f_styblinski_tang(const double* z, int d) noexcept nogil:
    cdef double acc = 0.0, zi, z2
    cdef int i
    for i in range(d):
        zi = z[i]
        z2 = zi * zi
        acc += z2 * z2 - 16.0 * z2 + 5.0 * zi
    return 0.5 * acc


cdef double _dispatch(int base_id, const double* z, int d,
                      const double* noise_row) noexcept nogil:
    if base_id == B_SPHERE:
        return f_sphere(z, d)
    elif base_id == B_RASTRIGIN:
        return f_rastrigin(z, d)
    elif base_id == B_ACKLEY:
        return f_ackley(z, d)
    elif base_id == B_ALPINE1:
        return f_alpine1(z, d)
    elif base_id == B_CROWNED_CROSS:
        return f_crowned_cross(z, d)
    elif base_id == B_EGG_HOLDER:
        return f_egg_holder(z, d)
    elif base_id == B_EXPANDED_SCHAFFER6:
        return f_expanded_schaffer6(z, d)
    elif base_id == B_SCHAFFER1:
        return f_schaffer1(z, d)
    elif base_id == B_SCHAFFER2:
        return f_schaffer2(z, d)
    elif base_id == B_SCHAFFER3:
        return f_schaffer3(z, d)
    elif base_id == B_SCHAFFER4:
        return f_schaffer4(z, d)
    elif base_id == B_SCHMIDT_VETTERS:
        return f_schmidt_vetters(z, d)
    elif base_id == B_LENNARD_JONES:
        return f_lennard_jones(z, d)
    elif base_id == B_MICHALEWICZ:
        return f_michalewicz(z, d)
    elif base_id == B_MISHRA3:
        return f_mishra3(z, d)
    elif base_id == B_MISHRA4:
        return f_mishra4(z, d)
    elif base_id == B_MODIFIED_ROSENBROCK2:
        return f_modified_rosenbrock2(z, d)
    elif base_id == B_BENT_CIGAR:
        return f_bent_cigar(z, d)
    elif base_id == B_DISCUS:
        return f_discus(z, d)
    elif base_id == B_ELLIPTIC:
        return f_elliptic(z, d)
    elif base_id == B_SALOMON:
        return f_salomon(z, d)
    elif base_id == B_SCHWEFEL220:
        return f_schwefel220(z, d)
    elif base_id == B_SCHWEFEL236:
        return f_schwefel236(z, d)
    elif base_id == B_SCHWEFEL206:
        return f_schwefel206(z, d)
    elif base_id == B_SCHWEFEL_SINE:
        return f_schwefel_sine(z, d)
    elif base_id == B_SCHAFFER_F7:
        return f_schaffer_f7(z, d)
    elif base_id == B_HGBAT:
        return f_hgbat(z, d)
    elif base_id == B_HAPPYCAT:
        return f_happycat(z, d)
    elif base_id == B_WEIERSTRASS:
        return f_weierstrass(z, d)
    elif base_id == B_SHUBERT3:
        return f_shubert3(z, d)
    elif base_id == B_SHUBERT4:
        return f_shubert4(z, d)
    elif base_id == B_SINE_ENVELOPE:
        return f_sine_envelope(z, d)
    elif base_id == B_STOCHASTIC:
        return f_stochastic(z, d, noise_row)
    elif base_id == B_STRETCHED_V:
        return f_stretched_v(z, d)
    elif base_id == B_STYBLINSKI_TANG:
        return f_styblinski_tang(z, d)
    return 0.0


cdef double _eval_point(int base_id, const double* x, int d,
                        bint has_shift, const double* shift,
                        bint has_rot, const double* rot,
                        double* ybuf, double* zbuf,
                        const double* noise_row) noexcept nogil:
    cdef const double* z
    cdef double acc
    cdef int i, j
    if has_shift or has_rot:
        if has_shift:
            for i in range(d):
                ybuf[i] = x[i] - shift[i]
        else:
            for i in range(d):
                ybuf[i] = x[i]
        if has_rot:
            for i in range(d):
                acc = 0.0
                for j in range(d):
                    acc += rot[i * d + j] * ybuf[j]
                zbuf[i] = acc
            z = zbuf
        else:
            z = ybuf
    else:
        z = x
    return _dispatch(base_id, z, d, noise_row)


def evaluate_batch(const double[:, ::1] positions, double[::1] out, int base_id,
                   object shift_obj, object rot_obj, object noise_obj,
                   double[::1] ybuf, double[::1] zbuf):
    """Fill ``out`` with fitness per row; return first non-finite index or -1."""
    cdef int n = positions.shape[0]
    cdef int d = positions.shape[1]
    cdef bint has_shift = shift_obj is not None
    cdef bint has_rot = rot_obj is not None
    cdef bint has_noise = noise_obj is not None
    cdef const double[::1] shift = shift_obj if has_shift else ybuf
    cdef const double[:, ::1] rot = rot_obj if has_rot else positions
    cdef const double[::1] noise = noise_obj if has_noise else ybuf
    cdef const double* noise_row = NULL
    cdef int i
    cdef int bad = -1
    with nogil:
        for i in range(n):
            if has_noise:
                noise_row = &noise[i * d]
            out[i] = _eval_point(base_id, &positions[i, 0], d,
                                 has_shift, &shift[0],
                                 has_rot, &rot[0, 0],
                                 &ybuf[0], &zbuf[0], noise_row)
            if not isfinite(out[i]):
                bad = i
                break
    return bad


def sweep(double[:, ::1] pos, double[:, ::1] vel,
          double[:, ::1] pb_pos, double[::1] pb_fit,
          double[:, ::1] pw_pos, double[::1] pw_fit,
          double[::1] gb_pos, double[::1] gb_fit,
          double[::1] gw_pos, double[::1] gw_fit,
          const signed char[::1] role_ids,
          const double[::1] uniforms, const long long[::1] u_off,
          const double[::1] normals, const long long[::1] z_off,
          double omega, double c1, double c2, double c_role,
          double lam, double sigma,
          int base_id, const double[::1] low, const double[::1] high,
          object shift_obj, object rot_obj, object noise_obj,
          double[::1] buf_x, double[::1] ybuf, double[::1] zbuf):
    """One asynchronous iteration over all particles, in place.

    Returns the index of the first particle whose evaluation produced a
    non-finite value, or -1 on success.  On an early return the offending
    particle's position/velocity are already written back so the caller can
    report them.
    """
    cdef int n = pos.shape[0]
    cdef int d = pos.shape[1]
    cdef bint has_shift = shift_obj is not None
    cdef bint has_rot = rot_obj is not None
    cdef bint has_noise = noise_obj is not None
    cdef const double[::1] shift = shift_obj if has_shift else low
    cdef const double[:, ::1] rot = rot_obj if has_rot else pos
    cdef const double[::1] noise = noise_obj if has_noise else low
    cdef const double* noise_row = NULL
    cdef const double* u
    cdef int i, j, rid
    cdef int bad = -1
    cdef double a, b, nx, fit
    with nogil:
        for i in range(n):
            rid = role_ids[i]
            u = &uniforms[u_off[i]]
            if rid == R_STANDARD or rid == R_DRIFTER:
                a = c1 * u[0]; b = c2 * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + b * (gb_pos[j] - pos[i, j])
            elif rid == R_REBEL:
                a = c1 * u[0]; b = c_role * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + b * (pos[i, j] - gb_pos[j])
            elif rid == R_REJECTOR:
                a = c_role * u[0]; b = c2 * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pos[i, j] - pb_pos[i, j]) \
                                + b * (gb_pos[j] - pos[i, j])
            elif rid == R_CONTRARIAN:
                a = c1 * u[0]; b = c_role * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + b * (gw_pos[j] - pos[i, j])
            elif rid == R_DEFEATIST:
                a = c_role * u[0]; b = c2 * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pw_pos[i, j] - pos[i, j]) \
                                + b * (gb_pos[j] - pos[i, j])
            elif rid == R_ESCHEWER:
                a = c1 * u[0]; b = c_role * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + b * (pos[i, j] - gw_pos[j])
            elif rid == R_ESCAPIST:
                a = c_role * u[0]; b = c2 * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pos[i, j] - pw_pos[i, j]) \
                                + b * (gb_pos[j] - pos[i, j])
            elif rid == R_ANARCHIC:
                a = c1 * u[0]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + lam * (2.0 * u[1 + j] - 1.0)
            elif rid == R_AMNESIAC:
                b = c2 * u[0]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + lam * (2.0 * u[1 + j] - 1.0) \
                                + b * (gb_pos[j] - pos[i, j])
            elif rid == R_ERRATIC:
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + lam * (2.0 * u[j] - 1.0)
            else:  # wanderer
                a = c1 * u[0]; b = c2 * u[1]
                for j in range(d):
                    vel[i, j] = omega * vel[i, j] + a * (pb_pos[i, j] - pos[i, j]) \
                                + b * (gb_pos[j] - pos[i, j]) \
                                + lam * (2.0 * u[2 + j] - 1.0)

            for j in range(d):
                nx = pos[i, j] + vel[i, j]
                if rid == R_DRIFTER:
                    nx = nx + sigma * normals[z_off[i] + j]
                if nx < low[j]:
                    nx = low[j]
                elif nx > high[j]:
                    nx = high[j]
                buf_x[j] = nx

            if has_noise:
                noise_row = &noise[i * d]
            fit = _eval_point(base_id, &buf_x[0], d,
                              has_shift, &shift[0],
                              has_rot, &rot[0, 0],
                              &ybuf[0], &zbuf[0], noise_row)
            for j in range(d):
                pos[i, j] = buf_x[j]
            if not isfinite(fit):
                bad = i
                break
            if fit < pb_fit[i]:
                pb_fit[i] = fit
                for j in range(d):
                    pb_pos[i, j] = buf_x[j]
            if fit > pw_fit[i]:
                pw_fit[i] = fit
                for j in range(d):
                    pw_pos[i, j] = buf_x[j]
            if fit < gb_fit[0]:
                gb_fit[0] = fit
                for j in range(d):
                    gb_pos[j] = buf_x[j]
            if fit > gw_fit[0]:
                gw_fit[0] = fit
                for j in range(d):
                    gw_pos[j] = buf_x[j]
    return bad
