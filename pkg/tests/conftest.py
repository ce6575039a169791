import os

# Force a headless backend before anything pulls in matplotlib.
os.environ.setdefault("MPLBACKEND", "Agg")
