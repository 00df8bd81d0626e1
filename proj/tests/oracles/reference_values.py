# Reference values frozen into the C++ tests. Computed at 40 digits with mpmath.
from mpmath import mp, mpf, mpc, gamma, hyp2f1, psi, log, exp, pi, sin, cos, matrix, det, sqrt

mp.dps = 40


def F(x):
    return hyp2f1(0.5, 0.5, 1, x)


def F1(x):
    # coefficients c_n * 2[psi(n+1/2) - psi(n+1)], summed directly
    s, c, n = mpf(0), mpf(1), 0
    while True:
        t = c * 2 * (psi(0, n + mpf(1) / 2) - psi(0, n + 1)) * x**n
        s += t
        if abs(t) < mpf(10) ** -38 and n > 10:
            break
        c *= ((n + mpf(1) / 2) / (n + 1)) ** 2
        n += 1
    return s


def show(name, z):
    z = mpc(z)
    print(f"{name}: {mp.nstr(z.real, 20)} {mp.nstr(z.imag, 20)}")


show("gamma(2.5+1i)", gamma(mpc(2.5, 1)))
show("F(0.5)", F(mpf("0.5")))
show("F1(0.2)", F1(mpf("0.2")))
x = mpf("0.1")
Fx = F(x)
dF = mp.diff(F, x)
G = lambda t: F(t) * log(t) + F1(t)
show("wronskian*x(1-x) at 0.1", (Fx * mp.diff(G, x) - dF * G(x)) * x * (1 - x))
x = mpf("0.01")
tau = -1j / pi * (log(x) + F1(x) / F(x))
show("h(0.01,1)", exp(1j * pi * tau) * 16 / x)


def C01(s, t1, ti):
    a = (ti + t1 + s) / 2
    b = 1 + (-ti + t1 + s) / 2
    c = s + 1
    return matrix([[gamma(c - a - b) * gamma(c) / (gamma(c - a) * gamma(c - b)),
                    gamma(c - a - b) * gamma(2 - c) / (gamma(1 - a) * gamma(1 - b))],
                   [gamma(a + b - c) * gamma(c) / (gamma(a) * gamma(b)),
                    gamma(a + b - c) * gamma(2 - c) / (gamma(a + 1 - c) * gamma(b + 1 - c))]])


def Cinf0(s, t0, tx):
    a = (-s + t0 + tx) / 2
    b = 1 + (s + t0 + tx) / 2
    c = 1 + t0
    e = lambda z: exp(1j * pi * z)
    return matrix([[e(-a) * gamma(1 + a - b) * gamma(1 - c) / (gamma(1 - b) * gamma(1 + a - c)),
                    e(-b) * gamma(1 + b - a) * gamma(1 - c) / (gamma(1 - a) * gamma(1 + b - c))],
                   [e(c - 1 - a) * gamma(1 + a - b) * gamma(c - 1) / (gamma(a) * gamma(c - b)),
                    e(c - 1 - b) * gamma(1 + b - a) * gamma(c - 1) / (gamma(b) * gamma(c - a))]])


def Cinf1(s, t0, tx):
    a = (-s + t0 + tx) / 2
    b = 1 + (s + t0 + tx) / 2
    c = 1 + t0
    e = lambda z: exp(1j * pi * z)
    return matrix([[gamma(c - a - b) * gamma(1 + a - b) / (gamma(1 - b) * gamma(c - b)),
                    gamma(c - a - b) * gamma(1 + b - a) / (gamma(1 - a) * gamma(c - a))],
                   [e(c - a - b) * gamma(a + b - c) * gamma(1 + a - b) / (gamma(1 + a - c) * gamma(a)),
                    e(c - a - b) * gamma(a + b - c) * gamma(1 + b - a) / (gamma(1 + b - c) * gamma(b))]])


sg = mpc("0.37", "0.11")
th = [mpc("0.23", "0.05"), mpc("0.31", "-0.07"), mpc("0.41", "0.02"), mpc("0.17", "0.09")]  # theta0, thetaX, theta1, thetaInf
show("det C01", det(C01(sg, th[2], th[3])))
M = Cinf0(sg, th[0], th[1])
for i in range(2):
    for j in range(2):
        show(f"Cinf0[{i}{j}]", M[i, j])
M = Cinf1(sg, th[0], th[1])
for i in range(2):
    for j in range(2):
        show(f"Cinf1[{i}{j}]", M[i, j])
s = mpc("0.8", "-0.3")
t0, tx = th[0], th[1]
show("a_from_s", (t0 + tx + sg) * (-t0 + tx + sg) * (t0 + tx - sg) * (t0 - tx + sg) / (16 * sg**3 * s))


def fx(x0, x1, xi):
    return (4 - x0**2) / (x1**2 + xi**2 - x0 * x1 * xi)


def a_of(sg, x0, x1, xi, mu):
    pre = 1j * 16**sg * gamma((sg + 1) / 2) ** 4 / (8 * sin(pi * sg) * gamma(1 - mu + sg / 2) ** 2 * gamma(mu + sg / 2) ** 2)
    f = fx(x0, x1, xi)
    e = exp(-1j * pi * sg)
    return pre * (2 * (1 + e) - f * (xi**2 + e * x1**2)) * f


def third(x0, x1, mu):
    # root of x^2 - x0 x1 x + x0^2 + x1^2 - 4 sin^2(pi mu) = 0 with principal sqrt
    b = -x0 * x1
    c = x0**2 + x1**2 - 4 * sin(pi * mu) ** 2
    return (-b + sqrt(b * b - 4 * c)) / 2


mu = mpc("0.27", "0.04")
sg = mpc("0.4", "0.2")
x0 = 2 * sin(pi * sg / 2)
x1 = mpc("0.9", "0.3")
xi = third(x0, x1, mu)
show("triple xInf", xi)
show("a_of(0.4+0.2i)", a_of(sg, x0, x1, xi, mu))


def e_nu1_low(nu2, x0, x1, xi, mu):
    f = fx(x0, x1, xi)
    e = exp(1j * pi * nu2)
    pre = -1j * gamma(1 - nu2 / 2) ** 4 / (2 * sin(pi * nu2) * gamma(mpf(3) / 2 - mu - nu2 / 2) ** 2 * gamma(mpf(1) / 2 + mu - nu2 / 2) ** 2)
    return pre * (2 * (1 - e) - f * (xi**2 - e * x1**2)) * f


nu2 = 1 - sg
show("e^{i pi nu1} low", e_nu1_low(nu2, x0, x1, xi, mu))
