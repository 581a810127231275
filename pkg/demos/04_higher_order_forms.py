"""
Higher-order forms and their periods
====================================

F(z) = int_{2i -> z} w_1 w_2 is killed by three factors (g - 1) and sends
two factors to a product of periods, independently of z.
"""
from chenforms import B, C, HigherOrderForm, Letter, T, Word, named_form, order_certificate, period, psi_image

cusp, eis = Letter(named_form("cusp11")), Letter(named_form("eis11"))
for l in (cusp, eis):
    print(l, [complex(round(period(l, g).value.real, 10), round(period(l, g).value.imag, 10)) for g in (T, B, C)])

F = HigherOrderForm(Word((eis, eis)))
for z in (2j, 0.5 + 2j, 3j):
    print("psi at", z, psi_image(F, (T, T), z).value)

G = HigherOrderForm(Word((cusp, eis)))
report = order_certificate(G, (T, B, C))
print("order", report.order, "passed", report.passed, "max residual", report.max_residual)
