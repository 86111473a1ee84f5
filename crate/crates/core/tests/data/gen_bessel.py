# Regenerates bessel_j.csv: J_a(x) and the modulus sqrt(J^2 + Y^2) at 40 digits.
import mpmath as mp

mp.mp.dps = 40
orders = ["-0.95", "-0.9", "-0.5", "-0.25", "0", "0.25", "0.5", "1", "2.5", "3.3", "10", "25.5", "60", "100"]
xs = [10 ** (-3 + 7 * i / 59) for i in range(60)] + [1.0, 2.0, 2.5, 24.9, 25.1, 99.9, 100.1]
print("a,x,j,modulus")
for a in orders:
    am = mp.mpf(a)
    for x in xs:
        xf = float(x)
        xm = mp.mpf(xf)
        j = mp.besselj(am, xm)
        y = mp.bessely(am, xm)
        print(f"{a},{xf!r},{mp.nstr(j, 20)},{mp.nstr(mp.sqrt(j*j+y*y), 20)}")
