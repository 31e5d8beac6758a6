"""
Métriques Prometheus centralisées

Compteurs du moteur partagés entre les features (arithmétique, résolveur,
drivers). Exportables au format texte par la CLI (--metrics-file).
"""
from prometheus_client import Counter, Histogram

# Bases de Gröbner calculées
GROEBNER_COUNT = Counter(
    'desing_groebner_bases',
    'Total Groebner bases computed by term order',
    ['order']
)

# Étapes traitées
STAGE_COUNT = Counter(
    'desing_stages',
    'Total resolution stages by task',
    ['task']
)

# Éclatements effectués
BLOWUP_COUNT = Counter(
    'desing_blowups',
    'Total chart blowups by center kind',
    ['kind']
)

# Branches arrêtées
HALT_COUNT = Counter(
    'desing_halts',
    'Total halted branches by reason',
    ['reason']
)

# Durée d'une étape
STAGE_LATENCY = Histogram(
    'desing_stage_latency_seconds',
    'Stage evaluation latency',
    ['task'],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0)
)
