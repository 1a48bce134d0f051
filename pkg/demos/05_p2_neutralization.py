"""For p = 2 four explicit tensors map onto sigma^2 times the matrix units."""

from __future__ import annotations

from weylsplit.azumaya import p2_assignments, p2_targets, verify_kaneda_mod_J, verify_p2_neutralization

targets = p2_targets()
for reading in ("compose", "multiply"):
    images = p2_assignments(reading=reading)
    print(reading, {name: images[name] == targets[name] for name in targets})

cert = verify_p2_neutralization()
print("certificate:", cert.status, "reading:", cert.witness["validated_reading"])

# Over F_p the same tensor map is onto: explicit preimages of every matrix unit.
for p in (2, 3):
    c = verify_kaneda_mod_J(p)
    print(f"p={p} mod-J preimages:", c.status)
    print("  e11 <-", c.witness["preimages"]["e11"])
