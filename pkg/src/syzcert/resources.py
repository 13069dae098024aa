"""Case notes shipped with the package.

Each case of the theorem has a Markdown file under ``cases/`` whose
frontmatter gives a title, the hypothesis as a subtitle and the precedence.
Text reports quote the note of the matched case.
"""
from dataclasses import dataclass
from dataclasses import field
from functools import cache
from operator import attrgetter
from pathlib import Path
from pathlib import PurePath

import frontmatter

from syzcert.here import CASES


@dataclass
class Resource:
    """Base dataclass used for all resources."""

    name: str
    title: str = ""
    body: str = ""


@dataclass
class CaseNote(Resource):
    """A Markdown+frontmatter description of one case."""

    subtitle: str = ""
    precedence: int = field(default=0)

    def __post_init__(self) -> None:
        """Read title, hypothesis and precedence from the note."""
        md_file = CASES / f"{self.name}.md"
        if not md_file.exists():
            raise ValueError(f"No case note at {self.name}")
        md_fm = frontmatter.load(md_file)
        self.title = md_fm.get("title", "")
        self.subtitle = md_fm.get("subtitle", "")
        self.precedence = int(md_fm.get("precedence", 0))
        self.body = md_fm.content.strip()


@dataclass
class Resources:
    """Container for all notes in the package."""

    cases: dict[str, CaseNote] = field(default_factory=dict)


def get_sorted_paths(target_dir: Path, suffix: str = ".md") -> list[PurePath]:
    """Return an alphabetized listing of the files with ``suffix``."""
    paths = [e for e in target_dir.iterdir() if e.suffix == suffix]
    return sorted(paths, key=attrgetter("name"))


@cache
def get_resources() -> Resources:
    """Load every case note once, ordered by precedence."""
    notes = [CaseNote(name=path.stem) for path in get_sorted_paths(CASES)]
    notes.sort(key=attrgetter("precedence"))
    return Resources(cases={note.name: note for note in notes})
