"""Write a certificate to JSON, reload it, then show that tampering is caught."""

import json
import tempfile
from pathlib import Path

from einsolv import catalog, diagonal_soliton_solve, rank_one_extension, search_structures, verify_certificate

base = diagonal_soliton_solve(catalog.lookup("51:2")).metric_algebra(params=[1, 1, 1])
ext, _ = rank_one_extension(base)
cert = search_structures(ext).certificates[0]

path = Path(tempfile.mkdtemp()) / "certificate.json"
path.write_text(json.dumps(cert.to_dict(), indent=2), encoding="utf-8")
print("wrote", path)

again = verify_certificate(json.loads(path.read_text(encoding="utf-8")))
print("reloaded certificate:", "valid" if again.valid else "invalid")

data = json.loads(path.read_text(encoding="utf-8"))
data["metric"][0][0] = "7"  # perturb one metric entry
broken = verify_certificate(data)
print("tampered certificate fails:", ", ".join(c.name for c in broken.ledger.failures()))
