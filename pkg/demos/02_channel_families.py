"""Build the subchannel families and check that they are legitimate channels.

Each family is a two-qubit unitary U whose blocks give the intermediate
operators A_0 and A_1. Measuring the auxiliary qubit in z splits the channel
into four subchannels K_ij = |i><i| A_j.
"""

from sdsteer.channels import SUPPORTED_SETTINGS, build_bell_diagonal_family, build_family, check_family, family_to_json

for n in SUPPORTED_SETTINGS:
    rep = check_family(build_family(n))
    print(
        f"n={n:<2} gates={len(build_family(n).gates)} completeness={rep.channel.completeness_defect:.1e} "
        f"unitarity={rep.unitarity_defect:.1e} min Choi eig={min(rep.channel.subchannel_choi_min):+.1e} "
        f"ok={rep.passed()}"
    )

print("bell-diagonal family ok:", check_family(build_bell_diagonal_family()).passed())
print("\nexported n=2 family (first lines):")
print("\n".join(family_to_json(build_family(2)).splitlines()[:8]))
