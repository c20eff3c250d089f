"""Content-addressed on-disk cache for resolution artifacts.

Keys are sha256 over (canonical presentation text, window, algorithm
version); loads re-verify d∘d = 0 and minimality before use, and a
corrupt artifact is recomputed with a logged warning rather than
trusted.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional

from . import ALGO_VERSION
from .errors import CacheCorrupt
from .gradedalg import AlgebraPresentation
from .presentation_io import canonical_text
from .resolution import FreeResolution, minimal_resolution, verify_complex

log = logging.getLogger(__name__)

ENV_VAR = "GORCALC_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "gorcalc"


def cache_key(pres: AlgebraPresentation, hom_bound: int, deg_bound: int) -> str:
    payload = json.dumps(
        {
            "algo_version": ALGO_VERSION,
            "presentation": canonical_text(pres),
            "hom_bound": hom_bound,
            "deg_bound": deg_bound,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResolutionCache:
    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def path_for(self, pres: AlgebraPresentation, hom_bound: int, deg_bound: int) -> Path:
        return self.root / f"{cache_key(pres, hom_bound, deg_bound)}.json"

    def store(self, res: FreeResolution) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(res.pres, res.hom_bound, res.deg_bound)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(res.to_json(), sort_keys=True), encoding="utf-8")
        tmp.replace(path)
        return path

    def load(
        self, pres: AlgebraPresentation, hom_bound: int, deg_bound: int
    ) -> Optional[FreeResolution]:
        path = self.path_for(pres, hom_bound, deg_bound)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            if doc.get("algo_version") != ALGO_VERSION:
                raise CacheCorrupt("algorithm version mismatch")
            res = FreeResolution.from_json(doc)
            if canonical_text(res.pres) != canonical_text(pres):
                raise CacheCorrupt("presentation mismatch under identical key")
            verify_complex(res)
            return res
        except (CacheCorrupt, AssertionError, KeyError, ValueError, json.JSONDecodeError) as exc:
            log.warning("cache artifact %s is corrupt (%s); recomputing", path.name, exc)
            return None

    def resolution(
        self, pres: AlgebraPresentation, hom_bound: int, deg_bound: int
    ) -> FreeResolution:
        got = self.load(pres, hom_bound, deg_bound)
        if got is not None:
            return got
        res = minimal_resolution(pres, hom_bound, deg_bound)
        self.store(res)
        return res
