"""
Django app configuration for boundary problems and their factorization.
"""

from django.apps import AppConfig


class BoundaryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'boundary'
    verbose_name = 'Generalized Boundary Problems'
