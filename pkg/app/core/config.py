"""
Configuration centralisée avec pydantic-settings

Ce module centralise toute la configuration du moteur de désingularisation :
ordre monomial des bases, plafonds de sécurité, options des drivers.
Chaque champ peut être surchargé par une variable d'environnement
(nom en majuscules) ou par le fichier .env à la racine du projet.
"""
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Chemin vers le fichier .env à la racine du projet
ENV_FILE = Path(__file__).resolve().parent.parent.parent / ".env"


class Settings(BaseSettings):
    """Configuration globale du moteur"""

    model_config = SettingsConfigDict(
        env_file=ENV_FILE if ENV_FILE.exists() else None,
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application
    app_name: str = "desing"
    app_version: str = "1.0.0"
    log_level: str = "INFO"
    environment: str = "development"

    # === Arithmétique ===
    # Ordre de toutes les bases de Gröbner internes
    term_order: Literal["grevlex", "lex"] = "grevlex"

    # === Plafonds ===
    delta_cap: int = Field(64, ge=1)  # itérations max d'une chaîne Δ multivariée
    stage_cap: int = Field(128, ge=1)  # étapes max d'une résolution
    eminus_subset_cap: int = Field(8, ge=1)  # |E⁻| max énuméré par l'invariant t

    # === Moteur ===
    verify_descents: bool = False  # vérifie Sing(J'',b'') = Sing(C,b''!) à chaque descente

    # === Drivers ===
    embedded_stop_at_smooth: bool = False  # coupe la branche au stade d'arrêt
    emit_format: Literal["text", "json"] = "text"


# Instance globale
settings = Settings()
