"""
FastAPI application exposing circuit compilation, pattern verification and
channel emulation over HTTP file uploads.
"""

import sys
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, File, Form, HTTPException, UploadFile

# the library modules live in the repository root
ROOT_DIR = Path(__file__).resolve().parents[3]
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from constants import __version__, DEFAULT_SEED, EXT_JSON, EXT_JSONC  # noqa: E402
from errors import QfError  # noqa: E402
from mbqc_channels import (  # noqa: E402
    EmulationMode, dephasing, depolarizing, amplitude_damping, emulate_channel,
    verify_equivalence,
)
from mbqc_compiler import compile_circuit  # noqa: E402
from qf_configloader import DEFAULT_TOLERANCES  # noqa: E402
from qf_io import (  # noqa: E402
    parse_jsonc, circuit_from_dict, pattern_from_dict, kraus_from_dict, pattern_to_dict,
)
from qf_report import Report, to_jsonable  # noqa: E402

app = FastAPI(
    title="qf-verify API",
    description="API for compiling circuits to measurement patterns and verifying them",
    version=__version__
)

# Maximum file sizes
MAX_UPLOAD_SIZE = 200 * 1024   # 200 Kb, patterns of 4-wire circuits stay well below

# sampled shots per request
MAX_SHOTS = 100_000

# largest accepted Choi distance of a sampled estimate
SAMPLE_TOL = 0.02

CHANNELS = {
    "dephasing": dephasing,
    "depolarizing": depolarizing,
    "amplitude_damping": amplitude_damping,
}


@app.get("/health")
async def health():
    """Health check endpoint"""
    return {"status": "healthy", "service": "qf-verify-api"}


async def read_json_upload(upload: UploadFile, label: str):
    """Read and parse an uploaded .json / .jsonc file (comments allowed)."""
    if not upload.filename or not upload.filename.endswith((EXT_JSON, EXT_JSONC)):
        raise HTTPException(status_code=400, detail=f"{label} must be a .json or .jsonc file")
    try:
        content = await upload.read()
    finally:
        await upload.close()
    if len(content) > MAX_UPLOAD_SIZE:
        raise HTTPException(status_code=400,
                            detail=f"{label} too large (max {MAX_UPLOAD_SIZE / 1024}KB)")
    try:
        return parse_jsonc(content.decode("utf-8"))
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail=f"{label} is not UTF-8 text")
    except QfError as e:
        raise HTTPException(status_code=400, detail=f"{label}: {e}")


def report_response(report: Report) -> dict:
    status = {True: "✅ pass", False: "❌ fail", None: "✅ done"}[report.passed]
    print(f"{status}: {report.experiment}")
    return to_jsonable(report.to_dict())


@app.post("/compile")
async def compile_endpoint(
    circuit_file: UploadFile = File(..., description="Circuit .json file"),
    check: bool = Form(default=False, description="Also verify the pattern by Choi distance"),
):
    """
    Compiles a gate circuit into a standard-form measurement pattern
    """
    data = await read_json_upload(circuit_file, "circuit_file")
    try:
        circuit = circuit_from_dict(data)
        pattern = compile_circuit(circuit)
        results = {
            "nodes": len(pattern.nodes),
            "measurements": pattern.n_measurements,
            "pattern": pattern_to_dict(pattern),
        }
        passed = None
        if check:
            equivalence = verify_equivalence(pattern, circuit)
            results["choi_distance"] = equivalence.choi_distance
            passed = equivalence.passed
    except QfError as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")

    return report_response(Report("compile", {"circuit": circuit_file.filename, "check": check},
                                   results, passed=passed))


@app.post("/verify")
async def verify_endpoint(
    pattern_file: UploadFile = File(..., description="Pattern .json file"),
    circuit_file: UploadFile = File(..., description="Circuit .json file"),
):
    """
    Compares a pattern with a circuit by the trace distance of their Choi matrices
    """
    pattern_data = await read_json_upload(pattern_file, "pattern_file")
    circuit_data = await read_json_upload(circuit_file, "circuit_file")
    try:
        pattern = pattern_from_dict(pattern_data)
        circuit = circuit_from_dict(circuit_data)
        equivalence = verify_equivalence(pattern, circuit)
    except QfError as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")

    params = {"pattern": pattern_file.filename, "circuit": circuit_file.filename,
              "threshold": DEFAULT_TOLERANCES.choi_distance}
    return report_response(Report("verify", params, {"choi_distance": equivalence.choi_distance},
                                  passed=equivalence.passed))


@app.post("/emulate-channel")
async def emulate_channel_endpoint(
    kraus_file: Optional[UploadFile] = File(None, description="Kraus .json file"),
    channel: Optional[str] = Form(default=None, description="dephasing, depolarizing or \
amplitude_damping (when no kraus_file is given)"),
    p: float = Form(default=1.0, description="Channel parameter"),
    mode: str = Form(default="exact", description="exact or measurement_only"),
    shots: int = Form(default=0, description="Sampled shots (measurement_only)"),
    seed: int = Form(default=DEFAULT_SEED),
):
    """
    Emulates a qubit channel through its Stinespring dilation
    """
    if (kraus_file is None) == (channel is None):
        raise HTTPException(status_code=400, detail="give either kraus_file or channel")
    if channel is not None and channel not in CHANNELS:
        raise HTTPException(status_code=400,
                            detail=f"unknown channel '{channel}' (known: {', '.join(CHANNELS)})")
    if not 0 <= shots <= MAX_SHOTS:
        raise HTTPException(status_code=400, detail=f"shots must be in 0..{MAX_SHOTS}")
    try:
        emulation_mode = EmulationMode(mode)
    except ValueError:
        raise HTTPException(status_code=400, detail="mode must be exact or measurement_only")

    kraus_data = await read_json_upload(kraus_file, "kraus_file") if kraus_file else None
    try:
        kraus = kraus_from_dict(kraus_data) if kraus_data is not None else CHANNELS[channel](p)
        result = emulate_channel(kraus, emulation_mode, shots, seed)
    except (QfError, ValueError) as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")

    results = {"ancillas": result.ancillas, "choi": result.choi.mat,
               "target": result.target.mat, "choi_distance": result.choi_distance}
    if result.pattern is not None:
        results["measurements"] = result.pattern.n_measurements
        results["pattern"] = pattern_to_dict(result.pattern)
    passed = result.passed
    if result.sampled_distance is not None:
        results["sampled_distance"] = result.sampled_distance
        passed = passed and result.sampled_distance <= SAMPLE_TOL
    source = {"kraus": kraus_file.filename} if kraus_file else {"channel": channel, "p": p}
    params = {**source, "mode": emulation_mode.value, "shots": result.shots}
    return report_response(Report("emulate-channel", params, results,
                                  seed=seed if result.shots else None, passed=passed))
