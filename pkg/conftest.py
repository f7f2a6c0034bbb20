import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'twistcalc_project.settings')
django.setup()
