"""
Quick example of the hyper-Bessel toolkit.
Evaluates the sine reduction and adjudicates a few bound claims.
"""

import logging

from hybess.bound_formulas import BoundVariant, theorem1_claims
from hybess.claim_verifier import ClaimVerifier
from hybess.hyper_bessel import eval_f, make_params
from hybess.models.config import SamplingConfig


def main():
    """Check Re(sin z/z) and Re(z/sin z) against both bound variants."""
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    print("=" * 60)
    print("Hyper-Bessel - Example Run")
    print("=" * 60)

    # d=1, alpha=1/2 reduces to sin z
    params = make_params(1, [0.5])
    print(f"f(1) = {eval_f(params, 1 + 0j)}")

    # Coarser grid than the defaults so the run takes well under a second
    verifier = ClaimVerifier(SamplingConfig(radii=32, angles=128))

    for variant in (BoundVariant.PAPER_STATED, BoundVariant.CORRECTED_RATIONAL):
        print(f"\n{variant.value} bounds:")
        for report in verifier.check_claims(theorem1_claims(params, variant, [0])):
            print(f"  {report.claim.description:<24} bound {report.claim.bound:.6f}  "
                  f"inf {report.extremum:.6f}  {report.status.value}")

    print("\n" + "=" * 60)


if __name__ == "__main__":
    main()
