"""app/calculus/cache.py
Defines the WeingartenCache class, a persistent store of exact Weingarten matrices keyed by
(family, k, N). Each key is one JSON file `<cache_dir>/<family>/k<k>_N<N>.json` holding the basis
as serialized partitions and every entry as numerator/denominator strings. Files are written to a
temporary name and renamed into place, so concurrent readers never see a partial file.

The cache directory comes from an explicit argument, else the WG_CACHE_DIR environment variable
(a .env file is honored), else the platform's user data directory.
"""
import json
import logging
import os
import tempfile
from typing import NamedTuple, Optional

from dotenv import load_dotenv
from platformdirs import user_data_dir

from app.calculus import linalg
from app.calculus.exceptions import ValidationError
from app.calculus.partitions import PairingFamily, enumerate_pairings
from app.calculus.weingarten import RationalMatrix, weingarten_matrix

load_dotenv()

APP_NAME = "weingarten-calculus"


class CacheKey(NamedTuple):
    """Cache key. The twisted flag is deliberately absent: both twists share one matrix."""
    family: PairingFamily
    k: int
    N: int

    @property
    def relative_path(self) -> str:
        return os.path.join(self.family.value, f"k{self.k}_N{self.N}.json")


class WeingartenCache:
    """Manages the on-disk Weingarten matrices and counts hits and misses for reports."""

    def __init__(self, cache_dir: Optional[str] = None, k_bound: Optional[int] = None):
        self.cache_dir = self.resolve_cache_dir(cache_dir)
        self.k_bound = k_bound
        self.hits = 0
        self.misses = 0

    @staticmethod
    def resolve_cache_dir(cache_dir: Optional[str] = None) -> str:
        """Explicit argument, then WG_CACHE_DIR, then the platform data directory."""
        if cache_dir:
            return cache_dir
        from_env = os.getenv('WG_CACHE_DIR')
        if from_env:
            return from_env
        return user_data_dir(APP_NAME, appauthor=False)

    @staticmethod
    def make_key(family, k: int, N: int) -> CacheKey:
        return CacheKey(PairingFamily.parse(family), int(k), int(N))

    def path_for(self, key: CacheKey) -> str:
        return os.path.join(self.cache_dir, key.relative_path)

    def load(self, key: CacheKey) -> Optional[RationalMatrix]:
        """
        Read a cached matrix. Returns None when the file is missing, and also when it is corrupt
        (after logging a warning), so the caller recomputes and overwrites it.
        """
        file_path = self.path_for(key)
        try:
            with open(file_path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
            matrix = RationalMatrix.from_payload(payload["weingarten"])
            if list(matrix.basis) != enumerate_pairings(key.k, key.family):
                raise ValidationError("cached basis does not match the canonical pairing order")
            return matrix
        except FileNotFoundError:
            logging.info(f"Cache miss for {key.relative_path}.")
            return None
        except (ValueError, KeyError, TypeError) as e:
            logging.warning(f"Corrupt cache file {file_path}: {e}. Recomputing.")
            return None

    def put(self, key: CacheKey, matrix: RationalMatrix) -> RationalMatrix:
        """Persist a matrix atomically and return it."""
        file_path = self.path_for(key)
        directory = os.path.dirname(file_path)
        os.makedirs(directory, exist_ok=True)
        payload = {
            "family": key.family.value,
            "k": key.k,
            "N": key.N,
            "weingarten": matrix.to_payload(),
        }
        handle = tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory,
                                             prefix=".tmp-", suffix=".json", delete=False)
        try:
            with handle:
                json.dump(payload, handle, sort_keys=True, separators=(",", ":"))
            os.replace(handle.name, file_path)
        except OSError:
            if os.path.exists(handle.name):
                os.remove(handle.name)
            raise
        logging.info(f"Weingarten matrix saved to {file_path}")
        return matrix

    def get(self, family, k: int, N: int) -> RationalMatrix:
        """Cached Weingarten matrix for (family, k, N), computed and stored on a miss."""
        key = self.make_key(family, k, N)
        matrix = self.load(key)
        if matrix is not None:
            self.hits += 1
            logging.info(f"Cache hit for {key.relative_path}.")
            return matrix
        self.misses += 1
        matrix = weingarten_matrix(key.family, key.k, key.N, self.k_bound, linalg.BAREISS)
        return self.put(key, matrix)
