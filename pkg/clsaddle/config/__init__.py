from .config import *
from .workers import default_jobs
