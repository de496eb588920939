from django.apps import AppConfig


class RefactoringConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'refactoring'
