"""Ground-truth speech rate from a transcript-per-chapter speech corpus.

Walks the speaker/chapter layout used by the LibriSpeech releases:
``<root>/<speaker>/<chapter>/<speaker>-<chapter>.trans.txt`` with one
``<utterance-id> WORD WORD ...`` line per clip and the audio stored next
to the transcript. Speech rate is the word count of a clip's transcript
divided by the clip's duration in seconds.

Durations come from file headers only, so no audio is decoded: FLAC
stream-info blocks carry sample counts directly, and WAV durations come
from the stdlib reader.
"""

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from repaxes.io import SampleRecord

from .errors import AdapterError

AUDIO_SUFFIXES = (".flac", ".wav")


@dataclass(frozen=True)
class ClipInfo:
    id: str
    audio_path: Path
    transcript: str
    duration_s: float

    @property
    def word_count(self) -> int:
        return len(self.transcript.split())

    @property
    def speech_rate(self) -> float:
        return self.word_count / self.duration_s


def flac_stream_info(path) -> tuple[int, int, int]:
    """Return (sample_rate, channels, total_samples) from a FLAC header."""
    path = Path(path)
    with open(path, "rb") as fh:
        if fh.read(4) != b"fLaC":
            raise AdapterError(f"{path} is not a FLAC file")
        header = fh.read(4)
        if len(header) < 4 or header[0] & 0x7F != 0:
            raise AdapterError(f"{path} does not start with a stream-info block")
        size = int.from_bytes(header[1:4], "big")
        info = fh.read(size)
        if len(info) < 34:
            raise AdapterError(f"{path} has a truncated stream-info block")
    sample_rate = (info[10] << 12) | (info[11] << 4) | (info[12] >> 4)
    channels = ((info[12] >> 1) & 0x7) + 1
    total = ((info[13] & 0x0F) << 32) | int.from_bytes(info[14:18], "big")
    if sample_rate == 0:
        raise AdapterError(f"{path} declares a zero sample rate")
    return sample_rate, channels, total


def audio_duration_s(path) -> float:
    path = Path(path)
    if path.suffix == ".flac":
        sample_rate, _, total = flac_stream_info(path)
        if total == 0:
            raise AdapterError(f"{path} does not declare its sample count")
        return total / sample_rate
    try:
        with wave.open(str(path), "rb") as fh:
            return fh.getnframes() / fh.getframerate()
    except wave.Error as exc:
        raise AdapterError(f"cannot read WAV header of {path}: {exc}") from exc


def _audio_for(transcript_path: Path, clip_id: str) -> Path:
    for suffix in AUDIO_SUFFIXES:
        candidate = transcript_path.parent / f"{clip_id}{suffix}"
        if candidate.is_file():
            return candidate
    raise AdapterError(f"no audio file next to {transcript_path} for id {clip_id!r}")


def scan_corpus(root) -> list[ClipInfo]:
    """Collect every transcribed clip under the corpus root, sorted by id."""
    root = Path(root)
    if not root.is_dir():
        raise AdapterError(f"corpus root {root} is not a directory")
    clips = []
    for transcript_path in sorted(root.glob("*/*/*.trans.txt")):
        for line in transcript_path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            clip_id, _, text = line.partition(" ")
            text = text.strip()
            if not text:
                raise AdapterError(f"{transcript_path} has an empty transcript for {clip_id!r}")
            audio = _audio_for(transcript_path, clip_id)
            clips.append(ClipInfo(
                id=clip_id,
                audio_path=audio,
                transcript=text,
                duration_s=audio_duration_s(audio),
            ))
    if not clips:
        raise AdapterError(f"no transcripts found under {root}")
    return sorted(clips, key=lambda clip: clip.id)


def corpus_speech_rate(root) -> dict:
    """Summarize words-per-second over every clip in the corpus."""
    rates = np.array([clip.speech_rate for clip in scan_corpus(root)], dtype=np.float64)
    return {
        "count": int(rates.size),
        "mean_wps": float(rates.mean()),
        "std_wps": float(rates.std()),
        "min_wps": float(rates.min()),
        "max_wps": float(rates.max()),
    }


def corpus_manifest(root, split="test") -> list[SampleRecord]:
    """Bridge the corpus into evaluation-engine manifest records.

    Media paths are relative to the corpus root; write the manifest next
    to the root or pass the root as the dataset's media directory.
    """
    root = Path(root)
    records = []
    for clip in scan_corpus(root):
        records.append(SampleRecord(
            id=clip.id,
            split=split,
            media_path=clip.audio_path.relative_to(root).as_posix(),
            fv_values={"speech_rate": clip.speech_rate},
            duration_s=clip.duration_s,
            transcript=clip.transcript,
        ))
    return records
