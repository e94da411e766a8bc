"""Walk through the core screening algebra for a single test.

A test with sensitivity 0.60 and specificity 0.95 looks excellent on
paper, yet its positive predictive value collapses at low prevalence.
This script traces PPV across the prevalence range, finds the
prevalence threshold where confidence in a positive result starts to
erode quickly, and runs an exact Bayes update for one patient.
"""

import numpy as np

from bayescreen import (
    TestCharacteristics,
    fagan_coordinates,
    positive_lr,
    posttest_exact,
    ppv,
    ppv_at_threshold,
    ppv_curve,
    prevalence_threshold,
)

test = TestCharacteristics(sensitivity=0.60, specificity=0.95)

print(f"positive likelihood ratio: {positive_lr(test):.2f}")
print(f"Youden's J:                {test.youden_j:.2f}")

# The prevalence threshold: below it, PPV falls off steeply.
phi_e = prevalence_threshold(test)
print(f"prevalence threshold:      {phi_e:.4f}")
print(f"PPV at the threshold:      {ppv_at_threshold(test):.4f}")

# PPV at a few representative prevalences.
for phi in (0.01, 0.05, phi_e, 0.5):
    print(f"  PPV at prevalence {phi:.4f}: {ppv(test, phi):.4f}")

# The full curve; its steepest ascent sits below the threshold.
curve = ppv_curve(test, grid_size=501)
slopes = np.gradient(curve.y, curve.x)
steepest = curve.x[np.argmax(slopes)]
print(f"steepest PPV ascent near prevalence {steepest:.4f}")

# One patient: pretest 9%, positive result on a LR=10 test.
pre, lr = 0.09, 10.0
post = posttest_exact(pre, lr)
left, mid, right = fagan_coordinates(pre, lr)
print(f"\npretest {pre:.2f} + positive LR={lr:.0f} test "
      f"-> posttest {post:.4f}")
print(f"nomogram anchors (log-odds): left={left:+.3f} "
      f"mid={mid:+.3f} right={right:+.3f}")
