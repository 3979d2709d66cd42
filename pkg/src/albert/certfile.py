"""Textual certificate files.

Line-oriented format, all scalars exact, no floating point, so checker
verdicts are reproducible bit for bit:

    ALBERT-CERT 1
    field Q
    algebra matrix3(Q)
    lambda 2
    dim 27
    target
    <dim rows of dim whitespace-separated base-field scalars>
    path
    <dim rows of dim whitespace-separated entries  num|den , each side a
     comma-separated ascending coefficient list over the base field>
    path
    ...
    end
"""

from __future__ import annotations

from .errors import CertificateError
from .scalars import parse_field_spec
from .upoly import RationalFunctionField
from .tits import FirstTits
from .rpaths import RCertificate

FORMAT_VERSION = "1"


def render_certificate(cert):
    J = cert.parent
    if not isinstance(J, FirstTits):
        raise CertificateError("only first-construction certificates are serialized")
    field = J.field
    Rt = RationalFunctionField(field, "t")
    lines = [
        f"ALBERT-CERT {FORMAT_VERSION}",
        f"field {field.spec_string()}",
        f"algebra {J.D.descriptor_string()}",
        f"lambda {field.format(J.lam)}",
        f"dim {J.dim}",
        "target",
    ]
    for row in cert.target_matrix:
        lines.append(" ".join(field.format(v) for v in row))
    for matrix in cert.path_matrices:
        lines.append("path")
        for row in matrix:
            lines.append(" ".join(Rt.format(v) for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_certificate(cert, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_certificate(cert))


def parse_certificate(text):
    """Rebuild an RCertificate from its textual form.

    The construction named in the header is rebuilt from scratch; nothing in
    the body is trusted until :func:`albert.rpaths.cert_check` validates it.
    """
    from .scenario import evaluate_descriptor

    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    idx = 0

    def next_line():
        nonlocal idx
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            raise CertificateError("unexpected end of certificate file")
        ln = lines[idx]
        idx += 1
        return ln

    header = next_line().split()
    if header[:1] != ["ALBERT-CERT"] or len(header) != 2:
        raise CertificateError("missing certificate header")
    if header[1] != FORMAT_VERSION:
        raise CertificateError(f"unsupported certificate version {header[1]!r}")

    def expect_key(key):
        ln = next_line()
        if not ln.startswith(key + " "):
            raise CertificateError(f"expected {key!r} line, found {ln!r}")
        return ln[len(key) + 1:].strip()

    field = parse_field_spec(expect_key("field"))
    algebra = evaluate_descriptor(expect_key("algebra"))
    lam = field.parse(expect_key("lambda"))
    dim = int(expect_key("dim"))
    J = FirstTits(algebra, lam)
    if J.dim != dim:
        raise CertificateError(
            f"declared dimension {dim} does not match construction ({J.dim})"
        )
    if next_line().strip() != "target":
        raise CertificateError("expected target block")
    target = []
    for _ in range(dim):
        row = next_line().split()
        if len(row) != dim:
            raise CertificateError("target row has wrong length")
        target.append([field.parse(v) for v in row])
    Rt = RationalFunctionField(field, "t")
    paths = []
    while True:
        marker = next_line().strip()
        if marker == "end":
            break
        if marker != "path":
            raise CertificateError(f"expected path or end, found {marker!r}")
        matrix = []
        for _ in range(dim):
            row = next_line().split()
            if len(row) != dim:
                raise CertificateError("path row has wrong length")
            matrix.append([Rt.parse(v) for v in row])
        paths.append(matrix)
    return RCertificate(J, target, paths)


def load_certificate(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_certificate(fh.read())
