# Independent oracle computations for frozen test constants.
# Everything here is computed with mpmath at 50 digits, via routes that do NOT
# mirror the library implementation (quadrature instead of closed forms where
# the library uses closed forms, root-bracketing on the CDF instead of a
# rational approximation for quantiles, etc.).
from mpmath import mp, mpf, exp, log, sqrt, sin, pi, erfc, quad, findroot

mp.dps = 50

def phi(x):
    # standard normal pdf
    return exp(-x * x / 2) / sqrt(2 * pi)

def Phi(x):
    # standard normal cdf via erfc (mpmath's erfc is fully accurate)
    return erfc(-x / sqrt(2)) / 2

def Phi_inv(p):
    # quantile by root solving on the cdf -- independent of any rational fit
    return findroot(lambda x: Phi(x) - p, mpf(0))

print("== normal cdf reference values ==")
for x in ["-8", "-5", "-3", "-2.3263478740408408", "-1", "-0.5", "0",
          "0.3", "1", "1.6448536269514722", "2", "3", "5", "8"]:
    print(f"Phi({x}) = {mp.nstr(Phi(mpf(x)), 22)}")

print("== normal quantiles ==")
for p in ["0.0005", "0.001", "0.01", "0.025", "0.05", "0.1", "0.25", "0.5",
          "0.75", "0.9", "0.95", "0.975", "0.99", "0.995", "0.999", "0.9995"]:
    print(f"Phi_inv({p}) = {mp.nstr(Phi_inv(mpf(p)), 22)}")

print("== kupiec ==")
def kupiec_lr(n, p, x):
    n, p, x = mpf(n), mpf(p), mpf(x)
    def term(k, q):
        return k * log(q) if k > 0 else mpf(0)
    return -2 * (term(n - x, 1 - p) + term(x, p)
                 - term(n - x, 1 - x / n) - term(x, x / n))

def chi2_1_sf(x):
    return erfc(sqrt(x / 2))

for (n, p, x) in [(250, "0.01", 5), (250, "0.01", 0), (1000, "0.05", 60)]:
    lr = kupiec_lr(n, p, x)
    print(f"LR(n={n},p={p},x={x}) = {mp.nstr(lr, 17)}  p_value = {mp.nstr(chi2_1_sf(lr), 17)}")

print("== black-scholes call by quadrature ==")
# price = e^{-rT} * int_{-inf}^{inf} max(S e^{(r-s^2/2)T + s sqrt(T) z} - K, 0) phi(z) dz
def bs_call_quad(s, k, r, sigma, t):
    s, k, r, sigma, t = map(mpf, (s, k, r, sigma, t))
    zstar = (log(k / s) - (r - sigma**2 / 2) * t) / (sigma * sqrt(t))
    integrand = lambda z: (s * exp((r - sigma**2 / 2) * t + sigma * sqrt(t) * z) - k) * phi(z)
    return exp(-r * t) * quad(integrand, [zstar, zstar + 40])

c = bs_call_quad(100, 100, "0.05", "0.2", 1)
print(f"call(100,100,0.05,0.2,1) = {mp.nstr(c, 17)}")
print(f"put via parity           = {mp.nstr(c - 100 + 100*exp(mpf('-0.05')), 17)}")
c2 = bs_call_quad(110, 100, "0.03", "0.25", "0.5")
print(f"call(110,100,0.03,0.25,0.5) = {mp.nstr(c2, 17)}")

print("== gbm 99% loss quantile, closed form ==")
z99 = Phi_inv(mpf("0.99"))
q = 1 - exp(mpf("-0.02") - mpf("0.2") * z99)
print(f"1-exp(-0.02-0.2*z99) = {mp.nstr(q, 17)}")
q_rounded = 1 - exp(mpf("-0.02") - mpf("0.2") * mpf("2.3263479"))
print(f"with 7-digit z       = {mp.nstr(q_rounded, 17)}")

print("== evt quantile example ==")
print(f"2+ln(10) = {mp.nstr(2 + log(10), 17)}")

print("== component var example (w .7/.3, vol .2/.1, rho 0) ==")
s11, s22 = mpf("0.04"), mpf("0.01")
w1, w2 = mpf("0.7"), mpf("0.3")
num1, num2 = w1 * (s11 * w1), w2 * (s22 * w2)
den = num1 + num2
print(f"c1 = {mp.nstr(num1/den, 17)}  c2 = {mp.nstr(num2/den, 17)}")
print(f"sigma_p = {mp.nstr(sqrt(den), 17)}")

print("== discounted payback example ==")
flows = [(-100, 0), (50, 1), (50, 2), (50, 3)]
r = mpf("0.10")
cum = mpf(0)
prev_cum, prev_t = None, None
for amt, t in flows:
    d = mpf(amt) / (1 + r) ** t
    new = cum + d
    print(f"  t={t} disc={mp.nstr(d, 12)} cum={mp.nstr(new, 12)}")
    if cum < 0 <= new:
        tau = prev_t + (0 - cum) * (t - prev_t) / (new - cum)
        print(f"  payback tau = {mp.nstr(tau, 17)}")
    prev_cum, prev_t = cum, t
    cum = new

print("== misc constants ==")
print(f"ln 2          = {mp.nstr(log(2), 17)}")
print(f"ln 0.5        = {mp.nstr(log(mpf('0.5')), 17)}")
print(f"-(ln(2*pi))/2 = {mp.nstr(-(log(2*pi))/2, 17)}")
print(f"ln(1.01)      = {mp.nstr(log(mpf('1.01')), 17)}")

print("== ewma example ==")
print(f"0.94*1e-4 + 0.06*(0.02)^2 = {mp.nstr(mpf('0.94')*mpf('1e-4') + mpf('0.06')*mpf('0.02')**2, 17)}")

print("== wacc worked example ==")
w = mpf("0.06")*(1-mpf("0.30"))*mpf("0.4") + mpf("0.10")*mpf("0.5") + mpf("0.08")*mpf("0.1")
print(f"wacc = {mp.nstr(w, 17)}")

print("== historical var example: grid -0.50..0.49 step 0.01, level .99 ==")
xs = sorted(mpf(i) / 100 for i in range(-50, 50))
n = len(xs)
h = (n - 1) * mpf("0.01")
i = int(h)
frac = h - i
qv = xs[i] + frac * (xs[i + 1] - xs[i])
print(f"n={n} h={mp.nstr(h,12)} q={mp.nstr(qv, 17)} var={mp.nstr(-qv, 17)}")
