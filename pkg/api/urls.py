from django.urls import path

from . import views

app_name = 'api'

urlpatterns = [
    path('equations/', views.EquationsAPIView.as_view(), name='equations'),
    path('mult/', views.MultiplicityAPIView.as_view(), name='mult'),
    path('quadric/', views.QuadricAPIView.as_view(), name='quadric'),
]
