# Arbitrary-precision reference values frozen into the unit tests.
from mpmath import mp, mpf, log, log10, sqrt

mp.dps = 50

# Link rate at 100 m: 30 dBm, 0 dB gains, -85 dBm noise, 100 MHz, |g|^2 = 1.
pl = mpf("69.8") + 20 * log10(100)
snr = mpf(10) ** ((30 - pl + 85) / 10)
print("rate_100m", mp.nstr(mpf("1e8") * log(1 + snr, 2), 30))

# Rotary-wing propulsion power at 10 m/s, reference parameters.
p0, pi, utip, v0 = mpf("79.86"), mpf("88.63"), mpf(120), mpf("4.03")
d0, rho, s, a = mpf("0.6"), mpf("1.225"), mpf("0.05"), mpf("0.503")
v = mpf(10)
power = p0 * (1 + 3 * v**2 / utip**2) + pi * v0 / v + d0 * rho * s * a * v**3 / 2
print("power_10", mp.nstr(power, 30))

# Speed minimising energy per metre: root of d/dv (P(v)/v).
f = lambda v: p0 * (1 + 3 * v**2 / utip**2) / v + pi * v0 / v**2 + d0 * rho * s * a * v**2 / 2
print("min_speed", mp.nstr(mp.findroot(lambda v: mp.diff(f, v), 20), 30))
