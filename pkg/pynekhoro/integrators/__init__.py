from .base_integrator import BaseIntegrator
from .midpoint_integrator import MidpointIntegrator
