from django.apps import AppConfig


class SchubertConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'schubert'
    verbose_name = 'Schubert and Richardson multiplicities'
