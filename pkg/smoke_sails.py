import sys
sys.path.insert(0, "src")

from sclq.chains import parse_chain, scale_to_integral
from sclq.arcs import build_arcs
from sclq.cones import build_cone_system, extremal_rays
from sclq.sails import (build_klein_model, disk_box, klein_value, chi_o,
                        klein_profile, enumerate_disk_vectors, is_disk_vector)
from sclq.rationals import Rat

chain, spec = parse_chain("a^-3 + b^-2 + a^5 b^3 + a^-2 b^-1")
n, chain = scale_to_integral(chain)
arcs = build_arcs(chain, spec)
cone = build_cone_system(arcs, 0)
rays = extremal_rays(cone)
print("rays:", rays)
box = disk_box(cone, rays)
print("box:", box)
assert box == (6, 8, 3, 3, 5), box

model = build_klein_model(cone, box)
print("num disks:", len(model.disks))
assert (0, 4, 1, 1, 1) in model.disks
assert (0, 3, 2, 2, 0) in model.disks
assert (0, 5, 0, 0, 2) not in model.disks
for d in model.disks:
    assert is_disk_vector(cone, d), d
    assert klein_value(model, cone, d) >= 1, d
print("sample disks:", model.disks[:6])

print("kappa (0,4,1,1,1):", klein_value(model, cone, (0, 4, 1, 1, 1)))
print("kappa (5,0,0,0,3):", klein_value(model, cone, (5, 0, 0, 0, 3)))
print("kappa (0,3,2,2,0):", klein_value(model, cone, (0, 3, 2, 2, 0)))
print("chi_o (0,3,2,2,0):", chi_o(cone and model, cone, (0, 3, 2, 2, 0)))

v0 = (1, 0, 1, 1, 0)
v1 = (1, 1, 0, 0, 1)
prof = klein_profile(model, cone, v0, v1)
print("breakpoints:", prof.breakpoints())
print("slopes:", prof.slopes())
print("kappa at 3/5:", prof.value_at(Rat(3, 5)))
print("kappa at 7/10:", prof.value_at(Rat(7, 10)))
assert prof.breakpoints() == [Rat(0), Rat(3, 5), Rat(4, 5), Rat(1)], prof.breakpoints()
assert prof.value_at(Rat(3, 5)) == Rat(1, 5)
assert prof.value_at(Rat(7, 10)) == Rat(1, 5)
assert prof.value_at(Rat(1)) == 0
print("sails OK")
