"""
Settings Loader - YAML settings pack with LRU cache
Cargador de configuracion YAML con cache LRU
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml


DEFAULT_PACK_ID = "aqft"


class SettingsPack:
    """Lazy-loading settings container / Contenedor de configuracion con carga perezosa"""

    def __init__(self, pack_id: str = DEFAULT_PACK_ID, base_path: Optional[Path] = None):
        self.pack_id = pack_id
        if base_path:
            self.base_path = base_path
        else:
            self.base_path = Path(__file__).parent.parent / "config" / "yamls" / pack_id
        self._cache: Dict[str, dict] = {}

    @property
    def manifest(self) -> dict:
        """Pack metadata"""
        return self._load("manifest.yaml")

    @property
    def defaults(self) -> dict:
        """Runtime defaults for commands"""
        return self._load("defaults.yaml")

    @property
    def limits(self) -> dict:
        """Width and qubit guards"""
        return self._load("limits.yaml")

    @property
    def output(self) -> dict:
        """Export settings"""
        return self._load("output.yaml")

    def _load(self, filename: str) -> dict:
        """Settings file of this pack, read once per instance"""
        if filename not in self._cache:
            self._cache[filename] = load_yaml_file(self.base_path / filename)
        return self._cache[filename]

    def get_default(self, section: str, key: str, fallback: Any = None) -> Any:
        """
        Read one value from defaults.yaml
        Leer un valor de defaults.yaml

        Args:
            section: Top-level section (run, orderfinding, output)
            key: Key inside the section
            fallback: Returned when the key is absent

        Returns:
            The configured value or the fallback
        """
        return self.defaults.get(section, {}).get(key, fallback)

    def get_limit(self, key: str, fallback: Any = None) -> Any:
        """Read one guard from limits.yaml"""
        return self.limits.get(key, fallback)

    def output_dir(self) -> Optional[Path]:
        """Default output directory from the configured environment variable"""
        env_var = self.output.get("env_var", "AQFT_OUTPUT_DIR")
        value = os.environ.get(env_var)
        return Path(value) if value else None

    def clear_cache(self):
        """
        Forget loaded settings so edited YAML files are read again
        Olvidar la configuracion cargada para releer los YAML editados
        """
        self._cache.clear()
        load_yaml_file.cache_clear()


@lru_cache(maxsize=32)
def load_yaml_file(path: Path) -> dict:
    """
    Parse one settings file; a missing file reads as an empty section
    Leer un archivo de configuracion; si no existe se devuelve vacio

    Raises:
        ValueError: If the file is not valid YAML or its top level is not a mapping
    """
    if not path.is_file():
        return {}
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ValueError(f"Invalid settings file {path}: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"Settings file {path} must hold a mapping, got {type(data).__name__}")
    return data


def load_settings(pack_id: str = DEFAULT_PACK_ID) -> SettingsPack:
    """Load a settings pack by ID / Cargar un paquete de configuracion por ID"""
    return SettingsPack(pack_id)


def list_available_packs() -> list:
    """List all available settings packs / Listar todos los paquetes disponibles"""
    packs_dir = Path(__file__).parent.parent / "config" / "yamls"
    if not packs_dir.exists():
        return []
    return sorted(d.name for d in packs_dir.iterdir() if d.is_dir())
