"""The .emb embedding container: a checksummed binary matrix-with-ids file.

Byte layout (all integers little-endian):
  magic "SYNE" | u32 version=1 | u32 dim | u64 count | u8 dtype=0 | 3 reserved
  zero bytes | count x dim float32 row-major | id table (count entries of u16
  byte length + UTF-8) | u32 CRC32 over everything before it.
"""

import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import FormatError, ValidationError

MAGIC = b"SYNE"
VERSION = 1
DTYPE_F32 = 0

_HEADER = struct.Struct("<4sIIQB3s")


@dataclass
class EmbeddingStore:
    """Ordered, id-addressed float32 embedding matrix.

    ``extractor_id`` and ``created_by`` are in-memory provenance only; the
    byte layout does not carry them.
    """

    ids: list[str]
    matrix: np.ndarray
    extractor_id: str = ""
    created_by: str = ""
    _index: dict[str, int] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.matrix = np.ascontiguousarray(self.matrix, dtype=np.float32)
        if self.matrix.ndim != 2:
            raise ValidationError(f"matrix must be 2-D, got shape {self.matrix.shape}")
        if self.matrix.shape[1] < 1:
            raise ValidationError("embedding dim must be >= 1")
        if len(self.ids) != self.matrix.shape[0]:
            raise ValidationError(
                f"{len(self.ids)} ids but {self.matrix.shape[0]} matrix rows"
            )
        if not all(isinstance(i, str) and i for i in self.ids):
            raise ValidationError("ids must be non-empty strings")
        if len(set(self.ids)) != len(self.ids):
            raise ValidationError("ids must be unique")
        if self.matrix.size and not np.all(np.isfinite(self.matrix)):
            raise ValidationError("matrix contains non-finite values")
        self._index = {sample_id: row for row, sample_id in enumerate(self.ids)}

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def count(self) -> int:
        return int(self.matrix.shape[0])

    def row(self, sample_id: str) -> np.ndarray:
        try:
            return self.matrix[self._index[sample_id]]
        except KeyError:
            raise KeyError(f"id {sample_id!r} not in store") from None

    def __contains__(self, sample_id: str) -> bool:
        return sample_id in self._index


def write_embeddings(store: EmbeddingStore, path) -> None:
    """Serialize a store; the trailing CRC32 covers every preceding byte."""
    encoded_ids = []
    for sample_id in store.ids:
        raw = sample_id.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise FormatError(f"id too long to encode ({len(raw)} bytes): {sample_id[:40]!r}...")
        encoded_ids.append(struct.pack("<H", len(raw)) + raw)

    header = _HEADER.pack(MAGIC, VERSION, store.dim, store.count, DTYPE_F32, b"\x00" * 3)
    matrix_bytes = store.matrix.astype("<f4", copy=False).tobytes(order="C")
    body = header + matrix_bytes + b"".join(encoded_ids)
    crc = zlib.crc32(body) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(body)
        fh.write(struct.pack("<I", crc))


def read_embeddings(path) -> EmbeddingStore:
    """Parse and verify a .emb file; any inconsistency is a FormatError."""
    file = Path(path)
    try:
        data = file.read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {file}: {exc}") from exc

    if len(data) < _HEADER.size + 4:
        raise FormatError(f"{file}: truncated (only {len(data)} bytes)")

    magic, version, dim, count, dtype, reserved = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"{file}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{file}: unsupported version {version}")
    if dtype != DTYPE_F32:
        raise FormatError(f"{file}: unsupported dtype code {dtype}")
    if reserved != b"\x00" * 3:
        raise FormatError(f"{file}: reserved bytes not zero")
    if dim < 1:
        raise FormatError(f"{file}: dim must be >= 1, got {dim}")

    (stored_crc,) = struct.unpack_from("<I", data, len(data) - 4)
    actual_crc = zlib.crc32(data[:-4]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise FormatError(
            f"{file}: checksum mismatch (corrupt or truncated; "
            f"stored {stored_crc:#010x}, computed {actual_crc:#010x})"
        )

    offset = _HEADER.size
    matrix_bytes = count * dim * 4
    if offset + matrix_bytes > len(data) - 4:
        raise FormatError(f"{file}: declared matrix overruns the file")
    matrix = np.frombuffer(data, dtype="<f4", count=count * dim, offset=offset)
    matrix = matrix.reshape(count, dim).copy()
    offset += matrix_bytes

    ids = []
    end = len(data) - 4
    for row in range(count):
        if offset + 2 > end:
            raise FormatError(f"{file}: id table truncated at entry {row}")
        (length,) = struct.unpack_from("<H", data, offset)
        offset += 2
        if offset + length > end:
            raise FormatError(f"{file}: id entry {row} overruns the file")
        try:
            ids.append(data[offset : offset + length].decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise FormatError(f"{file}: id entry {row} is not valid UTF-8") from exc
        offset += length
    if offset != end:
        raise FormatError(f"{file}: {end - offset} unexpected trailing bytes before checksum")

    if matrix.size and not np.all(np.isfinite(matrix)):
        raise FormatError(f"{file}: matrix contains non-finite values")
    try:
        return EmbeddingStore(ids=ids, matrix=matrix)
    except ValidationError as exc:
        raise FormatError(f"{file}: {exc}") from exc
