from django.apps import AppConfig


class SolutionsConfig(AppConfig):
    name = 'Solutions'
    verbose_name = 'Reference solutions'
