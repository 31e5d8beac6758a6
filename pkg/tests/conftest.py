"""
Configuration pytest globale pour tous les tests
"""
import os
import sys
from pathlib import Path

# Ajouter la racine au PYTHONPATH pour importer app
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# IMPORTANT: Configurer l'environnement AVANT d'importer app.core.config
# Sinon les settings lisent les valeurs par défaut au moment de l'import
os.environ.setdefault("LOG_LEVEL", "ERROR")
