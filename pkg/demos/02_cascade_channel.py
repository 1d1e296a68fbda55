"""Cascade channel across the panel at one instant.

Evaluates the two-hop amplitude, path delay, and analytic delay rate for
every element at t = 10 s and maps how they vary over the panel face.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hapsris import Scenario, snapshot

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
KMH = 1e3 / 3600.0

scenario = Scenario(
    carrier_frequency=2e9,
    orbit_radius=3000.0,
    speed=110.0 * KMH,
    ris_length=10.0,
    ris_width=0.5,
    element_length=299792458.0 / 2e9 / 5.0,
    element_width=299792458.0 / 2e9 / 5.0,
    tx_position=[-5000.0, 0.0, 20000.0],
    rx_position=[5000.0, 0.0, 20000.0],
)

snap = snapshot(scenario, 10.0)
print(f"snapshot at t = {snap.time} s over "
      f"{scenario.num_columns} x {scenario.num_rows} elements")
print(f"amplitude: min {snap.amplitude.min():.4e}, "
      f"max {snap.amplitude.max():.4e} (dimensionless)")
print(f"delay:     min {snap.delay.min() * 1e6:.6f} us, "
      f"max {snap.delay.max() * 1e6:.6f} us "
      f"(spread {(snap.delay.max() - snap.delay.min()) * 1e9:.3f} ns)")
print(f"delay rate spans [{snap.delay_rate.min():.3e}, "
      f"{snap.delay_rate.max():.3e}] s/s "
      f"(bound 2 v / c = {2 * scenario.speed / scenario.light_speed:.3e})")

one = snap.element(1, 1)
print(f"element (1, 1): amplitude {one.amplitude:.4e}, "
      f"delay {one.delay * 1e6:.4f} us, rate {one.delay_rate:.3e}")

fig, axes = plt.subplots(3, 1, figsize=(9, 7), sharex=True)
extent = [1, scenario.num_columns, 1, scenario.num_rows]
for ax, field, label, scale in (
        (axes[0], snap.amplitude, "amplitude", 1.0),
        (axes[1], (snap.delay - snap.delay.min()), "delay - min [ns]", 1e9),
        (axes[2], snap.delay_rate, "delay rate [s/s]", 1.0)):
    image = ax.imshow(field.T * scale, origin="lower", aspect="auto",
                      extent=extent, cmap="viridis")
    ax.set_ylabel("row q")
    ax.set_title(label, fontsize=9)
    fig.colorbar(image, ax=ax)
axes[2].set_xlabel("column p")

os.makedirs(OUT_DIR, exist_ok=True)
target = os.path.join(OUT_DIR, "02_cascade_channel.png")
fig.tight_layout()
fig.savefig(target, dpi=120)
print(f"wrote {target}")
