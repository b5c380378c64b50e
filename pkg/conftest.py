import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'richardson.settings')
django.setup()
