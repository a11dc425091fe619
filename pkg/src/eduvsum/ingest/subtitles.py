"""Subtitle parsing for the two dominant cue-timing text formats.

Both comma-millisecond (SRT) and dot-millisecond (WebVTT) timing variants are
accepted by one parser: any line containing a `-->` arrow starts a cue, the
following non-blank lines are its text. Markup tags are stripped to plain text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from eduvsum.errors import ParseError, ValidationError

_TAG_RE = re.compile(r"<[^>]*>|\{[^}]*\}")
_TIME_RE = re.compile(r"^(?:(\d{1,3}):)?(\d{1,2}):(\d{1,2})[.,](\d{1,3})$")


@dataclass(frozen=True)
class SubtitleCue:
    start: float
    end: float
    text: str

    def __post_init__(self):
        if not self.end > self.start:
            raise ValidationError(f"cue end must exceed start ({self.start}, {self.end})")
        if not self.text.strip():
            raise ValidationError("cue text is empty")


def _parse_timestamp(token: str, line_no: int) -> float:
    m = _TIME_RE.match(token.strip())
    if m is None:
        raise ParseError(f"unparseable cue timestamp {token.strip()!r}", line=line_no)
    hours = int(m.group(1)) if m.group(1) else 0
    minutes, seconds = int(m.group(2)), int(m.group(3))
    millis = int(m.group(4).ljust(3, "0"))
    return hours * 3600 + minutes * 60 + seconds + millis / 1000.0


def parse_subtitles(subtitle_path: str | Path) -> list[SubtitleCue]:
    """Parse a subtitle file into cues sorted by start time.

    Overlapping cues are permitted; cues whose text trims to nothing are
    dropped. An empty file yields an empty list.
    """
    lines = Path(subtitle_path).read_text(encoding="utf-8-sig").splitlines()
    cues: list[SubtitleCue] = []
    i = 0
    while i < len(lines):
        line = lines[i]
        if "-->" in line:
            line_no = i + 1
            left, _, right = line.partition("-->")
            # WebVTT may append cue settings after the end time
            end_token = right.strip().split(" ")[0] if right.strip() else ""
            start = _parse_timestamp(left, line_no)
            end = _parse_timestamp(end_token, line_no)
            if end <= start:
                raise ParseError(f"cue end {end} does not exceed start {start}", line=line_no)
            i += 1
            text_lines = []
            while i < len(lines) and lines[i].strip():
                text_lines.append(_TAG_RE.sub("", lines[i]).strip())
                i += 1
            text = " ".join(t for t in text_lines if t).strip()
            if text:
                cues.append(SubtitleCue(start=start, end=end, text=text))
        else:
            i += 1
    cues.sort(key=lambda c: (c.start, c.end))
    return cues


def _format_timestamp(seconds: float, decimal: str) -> str:
    millis = int(round(seconds * 1000))
    h, rem = divmod(millis, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d}{decimal}{ms:03d}"


def serialize_subtitles(cues: list[SubtitleCue], path: str | Path, fmt: str = "srt") -> None:
    """Write cues as SRT or WebVTT; timing preserved to millisecond precision."""
    if fmt not in ("srt", "vtt"):
        raise ValueError(f"unsupported subtitle format {fmt!r}")
    decimal = "," if fmt == "srt" else "."
    blocks = []
    if fmt == "vtt":
        blocks.append("WEBVTT\n")
    for n, cue in enumerate(cues, start=1):
        header = f"{n}\n" if fmt == "srt" else ""
        blocks.append(
            f"{header}{_format_timestamp(cue.start, decimal)} --> "
            f"{_format_timestamp(cue.end, decimal)}\n{cue.text}\n"
        )
    Path(path).write_text("\n".join(blocks), encoding="utf-8")
